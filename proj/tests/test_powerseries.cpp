#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramlim/errors.hpp"
#include "ramlim/series.hpp"

using namespace ramlim;

namespace {
HPoly P(const std::string& s) { return parse_poly(s); }

HSeries S(std::vector<std::string> coeffs, int order) {
    std::vector<HPoly> c;
    for (const auto& s : coeffs) c.push_back(P(s));
    return make_series(std::move(c), order);
}
}

TEST_CASE("series multiplication truncates and respects degrees") {
    const HSeries a = S({"X0"}, 4);
    const HSeries b = S({"X1", "X2"}, 4);
    const HSeries ab = series_mul(a, b);
    CHECK(ab.degree == 2);
    CHECK(ab.coeff[0] == P("X0*X1"));
    CHECK(ab.coeff[1] == P("X0*X2"));
    CHECK(ab.coeff[2].is_zero());

    CHECK(series_mul(a, HSeries::zero(3, 4)).is_zero());

    const HSeries c = S({"X0", "X1"}, 2);
    const HSeries c2 = series_mul(c, c);
    CHECK(c2.order == 2);
    CHECK(c2.coeff[0] == P("X0^2"));
    CHECK(c2.coeff[1] == P("2*X0*X1"));
}

TEST_CASE("series multiplication is associative and commutative to order") {
    Rng rng(31);
    for (int i = 0; i < 12; ++i) {
        auto draw = [&](int d) {
            std::vector<HPoly> c;
            for (int k = 0; k < 3; ++k)
                c.push_back(random_hpoly(rng, d, 3));
            return make_series(std::move(c), 5);
        };
        const HSeries a = draw(1), b = draw(2), c = draw(1);
        CHECK(series_equal(series_mul(a, b), series_mul(b, a)));
        CHECK(series_equal(series_mul(series_mul(a, b), c),
                           series_mul(a, series_mul(b, c))));
    }
}

TEST_CASE("t_valuation") {
    CHECK(*t_valuation(S({"0", "X0^2", "X1^2"}, 5)) == 1);
    CHECK(!t_valuation(HSeries::zero(2, 5)).has_value());
    CHECK(*t_valuation(S({"X2^3"}, 5)) == 0);
    // valuation is additive under multiplication
    Rng rng(13);
    for (int i = 0; i < 10; ++i) {
        std::vector<HPoly> ca(4), cb(4);
        const int va = static_cast<int>(rng.next() % 2);
        const int vb = static_cast<int>(rng.next() % 2);
        ca[static_cast<std::size_t>(va)] = random_hpoly(rng, 1, 3);
        cb[static_cast<std::size_t>(vb)] = random_hpoly(rng, 2, 3);
        const HSeries a = make_series(std::move(ca), 4);
        const HSeries b = make_series(std::move(cb), 4);
        CHECK(*t_valuation(series_mul(a, b)) == va + vb);
    }
}

TEST_CASE("divide_by_series: exact, round-trip and failure") {
    const HSeries num = S({"X2^2*X0", "X2^2*X1"}, 4);
    const HSeries den = S({"X2^2"}, 4);
    const HSeries q = divide_by_series(num, den);
    CHECK(q.coeff[0] == P("X0"));
    CHECK(q.coeff[1] == P("X1"));

    Rng rng(37);
    for (int i = 0; i < 10; ++i) {
        auto draw = [&](int d, int len) {
            std::vector<HPoly> c;
            for (int k = 0; k < len; ++k) c.push_back(random_hpoly(rng, d, 3));
            return make_series(std::move(c), 6);
        };
        const HSeries f = draw(2, 3), g = draw(1, 3);
        const HSeries fg = series_mul(f, g);
        CHECK(series_equal(divide_by_series(fg, f), g));
        CHECK(series_equal(series_mul(f, divide_by_series(fg, f)), fg));
    }

    CHECK_THROWS_AS(divide_by_series(S({"0", "X0^3"}, 4), S({"X1"}, 4)),
                    InexactDivision);
    try {
        divide_by_series(S({"0", "X0^3"}, 4), S({"X1"}, 4));
    } catch (const InexactDivision& e) {
        CHECK(e.order == 1);
    }
}

TEST_CASE("divide_by_series handles divisor valuation") {
    // (t*X0^2) / (t*X0) = X0 with one trustworthy order fewer
    const HSeries num = S({"0", "X0^2"}, 4);
    const HSeries den = S({"0", "X0"}, 4);
    const HSeries q = divide_by_series(num, den);
    CHECK(q.coeff[0] == P("X0"));
    CHECK(q.order == 3);
}

TEST_CASE("saturate_basis normal form") {
    // [X0, t*X0 + t*X1] -> [X0, X0+X1]
    {
        const VFamily fam = saturate_basis({S({"X0"}, 4), S({"0", "X0", "0", "0"}, 4) +
                                                              S({"0", "X1"}, 4)});
        REQUIRE(fam.basis.size() == 2);
        CHECK(fam.basis[0].coeff[0] == P("X0"));
        CHECK(fam.basis[1].coeff[0] == P("X0+X1"));
    }
    // independent input unchanged
    {
        const VFamily fam = saturate_basis({S({"X0"}, 4), S({"X1"}, 4)});
        CHECK(fam.basis[0].coeff[0] == P("X0"));
        CHECK(fam.basis[1].coeff[0] == P("X1"));
    }
    // dependent over the Laurent field
    CHECK_THROWS_AS(saturate_basis({S({"X0"}, 4), S({"0", "X0"}, 4)}),
                    TruncationExhausted);
}

TEST_CASE("saturate_basis preserves the spanned module") {
    // basis with a t-deep dependency among constant parts
    const HSeries b0 = S({"X0", "X1"}, 6);
    const HSeries b1 = S({"X0", "X2", "X1"}, 6);   // constant parts equal
    const VFamily fam = saturate_basis({b0, b1});
    REQUIRE(fam.basis.size() == 2);
    // constant coefficients now independent
    CHECK(HPoly::compare(fam.basis[0].coeff[0], fam.basis[1].coeff[0]) != 0);
    // each output is a combination of inputs with t-power scalings:
    // check output[1] * t^v = c0*b0 + c1*b1 for the discovered shift by
    // verifying the first orders solve consistently (here the direct value:
    // b1-b0 = t*(X2-X1) + t^2*X1, divided by t)
    CHECK(fam.basis[1].coeff[0] == P("X2-X1"));
    CHECK(fam.basis[1].coeff[1] == P("X1"));
}
