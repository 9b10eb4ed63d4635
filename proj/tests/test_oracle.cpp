#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramlim/errors.hpp"
#include "ramlim/limits.hpp"
#include "ramlim/oracle.hpp"

using namespace ramlim;

namespace {
HPoly P(const std::string& s) { return parse_poly(s); }

HSeries S(std::vector<std::string> coeffs, int order) {
    std::vector<HPoly> c;
    for (const auto& s : coeffs) c.push_back(P(s));
    return make_series(std::move(c), order);
}

VFamily pencil_family(const std::string& l1, const std::string& l2, int order) {
    return saturate_basis({HSeries::constant(P(l1), order),
                           HSeries::constant(P(l2), order)});
}

const char* kL1 = "2*X0-X1";
const char* kL2 = "3*X1-2*X2";

CoordChange usable_m(const HSeries& f, const VFamily& v, const HPoly& h,
                     std::uint64_t seed) {
    for (std::uint64_t s = seed;; ++s) {
        try {
            const CoordChange m = random_coord_change(s, 3);
            (void)oracle_limit(f, v, h, m, f.order);
            return m;
        } catch (const DegenerateProjection&) {
        }
    }
}
}

TEST_CASE("oracle on a constant smooth family has valuation zero") {
    const HSeries f = S({"X0*X1-X2^2"}, 6);
    const VFamily v = pencil_family(kL1, kL2, 6);
    const HPoly h = P("X0+5*X1+7*X2");
    const CoordChange m = usable_m(f, v, h, 3);
    const OracleResult r = oracle_limit(f, v, h, m, 6);
    CHECK(r.valuation == 0);
    // agrees with the direct ramification realization under the same change
    const CycleExpr direct = ramification_term(Rational(1), P("X0*X1-X2^2"),
                                               {P(kL1), P(kL2)});
    const ChowForm mine = realize_chow(direct, m, P("X0+2*X1+9*X2"));
    CHECK(chow_equal(mine, r.chow));
}

TEST_CASE("oracle sees the doubled node of the conic degeneration") {
    const HSeries f = S({"X0*X1", "X2^2"}, 6);
    const VFamily v = pencil_family(kL1, kL2, 6);
    const HPoly h = P("X0+5*X1+7*X2");
    const CoordChange m = usable_m(f, v, h, 5);
    const OracleResult r = oracle_limit(f, v, h, m, 6);
    REQUIRE(r.chow.form.deg() == 2);
    const Rational disc = r.chow.form.coeff(1) * r.chow.form.coeff(1) -
                          4 * r.chow.form.coeff(0) * r.chow.form.coeff(2);
    CHECK(disc == 0);   // a squared linear form: the node counted twice
    CHECK(r.valuation >= 0);
}

TEST_CASE("oracle is independent of the auxiliary curve and the projection") {
    const HSeries f = S({"X2^2*X0", "X1^3"}, 8);
    const VFamily v = pencil_family(kL1, kL2, 8);
    const CycleExpr engine =
        limit_zeuthen(f, Factorization{{{P("X2"), 1}}}, P("X0"), v, 16).cycle;
    const VerifyReport rep = verify(engine, f, v, 3, 20250810, 8);
    CHECK(rep.all_match());
    CHECK(rep.trials.size() == 3);
}

TEST_CASE("verify matches engines on the standard degenerations") {
    const VFamily v = pencil_family(kL1, kL2, 8);
    // conic to node
    {
        const HSeries f = S({"X0*X1", "X2^2"}, 8);
        const CycleExpr out = limit_general_direction(
            f, Factorization{{{P("X0"), 1}, {P("X1"), 1}}}, v);
        CHECK(verify(out, f, v, 3, 7, 8).all_match());
    }
    // cubic, general direction
    {
        const HSeries f = S({"X0^2*X1", "X2^3"}, 8);
        const CycleExpr out = limit_general_direction(
            f, Factorization{{{P("X0"), 2}, {P("X1"), 1}}}, v);
        CHECK(verify(out, f, v, 3, 9, 8).all_match());
    }
    // quasi-general with a shared simple factor
    {
        const HSeries f = S({"X0^2*X1", "X1*X2^2"}, 8);
        const CycleExpr out = limit_quasi_general(
            f, Factorization{{{P("X0"), 2}, {P("X1"), 1}}}, v);
        CHECK(verify(out, f, v, 3, 11, 8).all_match());
    }
}

TEST_CASE("verify flags a perturbed multiplicity") {
    const HSeries f = S({"X0*X1", "X2^2"}, 8);
    const VFamily v = pencil_family(kL1, kL2, 8);
    const CycleExpr wrong = intersection_cycle(Rational(3), P("X0"), P("X1"));
    const VerifyReport rep = verify(wrong, f, v, 3, 13, 8);
    CHECK(rep.verdict == Verdict::Mismatch);
    CHECK(!rep.witness.empty());
}

TEST_CASE("verify flags a displaced point of the right degree") {
    const HSeries f = S({"X0*X1", "X2^2"}, 8);
    const VFamily v = pencil_family(kL1, kL2, 8);
    // right degree, wrong point
    const CycleExpr wrong = intersection_cycle(Rational(2), P("X0"), P("X2"));
    const VerifyReport rep = verify(wrong, f, v, 3, 17, 8);
    CHECK(rep.verdict == Verdict::Mismatch);
}

TEST_CASE("oracle handles a moving linear system") {
    // constant smooth curve, t-dependent pencil: the limit only sees V(0)
    const HSeries f = S({"X0*X1-X2^2"}, 6);
    const VFamily v = saturate_basis(
        {S({"2*X0-X1", "X2"}, 6), S({"3*X1-2*X2", "X0"}, 6)});
    const CycleExpr engine = limit_quasi_general(
        f, Factorization{{{P("X0*X1-X2^2"), 1}}}, v);
    CHECK(verify(engine, f, v, 2, 19, 8).all_match());
}

TEST_CASE("valuation is stable once the order suffices") {
    const HSeries f8 = S({"X2^2*X0", "X2*X1^2", "X1^3"}, 8);
    const HSeries f16 = S({"X2^2*X0", "X2*X1^2", "X1^3"}, 16);
    const VFamily v8 = pencil_family(kL1, kL2, 8);
    const VFamily v16 = pencil_family(kL1, kL2, 16);
    const HPoly h = P("X0+5*X1+7*X2");
    const CoordChange m = usable_m(f8, v8, h, 23);
    const OracleResult a = oracle_limit(f8, v8, h, m, 8);
    const OracleResult b = oracle_limit(f16, v16, h, m, 16);
    CHECK(a.valuation == b.valuation);
    CHECK(chow_equal(a.chow, b.chow));
}
