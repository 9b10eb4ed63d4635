#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramlim/errors.hpp"
#include "ramlim/foliation.hpp"
#include "ramlim/linalg.hpp"

using namespace ramlim;

namespace {
HPoly P(const std::string& s) { return parse_poly(s); }

HSeries S(std::vector<std::string> coeffs, int order) {
    std::vector<HPoly> c;
    for (const auto& s : coeffs) c.push_back(P(s));
    return make_series(std::move(c), order);
}

Derivation D(const std::string& g0, const std::string& g1, const std::string& g2) {
    return make_derivation(P(g0), P(g1), P(g2));
}
}

TEST_CASE("derivation application") {
    CHECK(apply(euler_derivation(), P("X0*X1*X2")) == P("3*X0*X1*X2"));
    CHECK(apply(D("0", "0", "1"), P("X2^2")) == P("2*X2"));
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        const HPoly p = random_hpoly(rng, 3, 4);
        const Derivation d = make_derivation(random_hpoly(rng, 2, 3),
                                             random_hpoly(rng, 2, 3),
                                             random_hpoly(rng, 2, 3));
        CHECK(apply(d, p.scaled(rational_of(7, 2))) ==
              apply(d, p).scaled(rational_of(7, 2)));
        CHECK(apply(euler_derivation(), p) == p.scaled(Rational(p.deg())));
    }
}

TEST_CASE("jacobi derivation") {
    const Derivation d = jacobi_derivation(P("X0"), P("X1"));
    CHECK(d.g[0].is_zero());
    CHECK(d.g[1].is_zero());
    CHECK(d.g[2] == P("1"));

    Rng rng(5);
    for (int i = 0; i < 15; ++i) {
        const HPoly p = random_hpoly(rng, 1 + static_cast<int>(rng.next() % 3), 3);
        const HPoly q = random_hpoly(rng, 1 + static_cast<int>(rng.next() % 3), 3);
        if (p.is_constant() || q.is_constant()) continue;
        const Derivation dpq = jacobi_derivation(p, q);
        CHECK(apply(dpq, p).is_zero());
        CHECK(apply(dpq, q).is_zero());
    }
    CHECK(jacobi_derivation(P("X0^2"), P("X0^2")).is_zero());
}

TEST_CASE("wronskian basics") {
    CHECK(wronskian(D("0", "0", "1"), {P("X0"), P("X2")}) == P("X0"));
    const Derivation d = D("X1", "X2", "X0");
    CHECK(wronskian(d, {P("X0^2"), P("3*X0^2")}).is_zero());
}

TEST_CASE("wronskian scaling and basis-change laws") {
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const int r1 = 2 + static_cast<int>(rng.next() % 2);   // basis size r+1
        const int d = 1 + static_cast<int>(rng.next() % 3);
        const int m = 1 + static_cast<int>(rng.next() % 3);
        std::vector<HPoly> basis;
        for (int k = 0; k < r1; ++k) basis.push_back(random_hpoly(rng, d, 3));
        const Derivation der = make_derivation(random_hpoly(rng, m, 2),
                                               random_hpoly(rng, m, 2),
                                               random_hpoly(rng, m, 2));
        const HPoly w = wronskian(der, basis);
        const int binom = r1 * (r1 - 1) / 2;

        // (1) scaling the derivation
        const Rational c = rational_of(rng.uniform(1, 5), rng.uniform(1, 3));
        const Derivation cd = make_derivation(der.g[0].scaled(c), der.g[1].scaled(c),
                                              der.g[2].scaled(c));
        Rational cpow(1);
        for (int k = 0; k < binom; ++k) cpow *= c;
        CHECK(wronskian(cd, basis) == w.scaled(cpow));

        // (2) basis change by a rational matrix
        QMatrix mat(static_cast<std::size_t>(r1),
                    QVec(static_cast<std::size_t>(r1), Rational(0)));
        for (auto& row : mat)
            for (auto& entry : row) entry = Rational(rng.uniform(-3, 3));
        std::vector<HPoly> moved(static_cast<std::size_t>(r1));
        for (int j = 0; j < r1; ++j) {
            HPoly acc;
            for (int k = 0; k < r1; ++k)
                acc += basis[static_cast<std::size_t>(k)].scaled(
                    mat[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
            moved[static_cast<std::size_t>(j)] = acc;
        }
        // det via the 2x2/3x3 formula through our own wronskian on a trivial
        // derivation is overkill; compute directly
        Rational detm;
        if (r1 == 2)
            detm = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0];
        else
            detm = mat[0][0] * (mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1]) -
                   mat[0][1] * (mat[1][0] * mat[2][2] - mat[1][2] * mat[2][0]) +
                   mat[0][2] * (mat[1][0] * mat[2][1] - mat[1][1] * mat[2][0]);
        CHECK(wronskian(der, moved) == w.scaled(detm));
    }
}

TEST_CASE("wronskian degree formula") {
    Rng rng(11);
    for (int i = 0; i < 10; ++i) {
        const int r1 = 2 + static_cast<int>(rng.next() % 2);
        const int d = 1 + static_cast<int>(rng.next() % 2);
        const int m = 1 + static_cast<int>(rng.next() % 2);
        std::vector<HPoly> basis;
        for (int k = 0; k < r1; ++k) basis.push_back(random_hpoly(rng, d, 3));
        const Derivation der = make_derivation(random_hpoly(rng, m, 2),
                                               random_hpoly(rng, m, 2),
                                               random_hpoly(rng, m, 2));
        const HPoly w = wronskian(der, basis);
        if (w.is_zero()) continue;
        CHECK(w.deg() == r1 * d + (r1 * (r1 - 1) / 2) * (m - 1));
    }
}

TEST_CASE("gcd_with_curve") {
    CHECK(gcd_with_curve(D("0", "0", "1"), P("X0*X1")) == P("1"));
    CHECK(gcd_with_curve(euler_derivation(), P("X0*X1")) == P("X0*X1"));
    CHECK(gcd_with_curve(D("0", "0", "X0"), P("X0")) == P("X0"));
}

TEST_CASE("is_F_derivation") {
    // jacobi families leave their first argument invariant
    const HSeries f = S({"X0^2*X1", "X2^3"}, 6);
    const HSeries h = S({"X0*X1*X2"}, 6);
    const DerivationFamily dj = jacobi_derivation(f, h);
    CHECK(is_F_derivation(dj, f).ok);

    // the direction (0,0,1) does not leave X2^2 invariant
    const DerivationFamily dz = constant_family(D("0", "0", "1"), 4);
    const auto res = is_F_derivation(dz, S({"X2^2"}, 4));
    CHECK(!res.ok);
}

TEST_CASE("reduced derivation of a degenerating cubic") {
    const HSeries f = S({"X0^2*X1", "X2^3"}, 6);
    Factorization fac;
    fac.factors = {{P("X0"), 2}, {P("X1"), 1}};
    const DerivationFamily red = reduced_derivation(f, fac);

    const Derivation at0 = red.at_zero();
    CHECK(at0.g[0] == P("3*X0*X2^2"));
    CHECK(at0.g[1] == P("-6*X1*X2^2"));
    CHECK(at0.g[2].is_zero());

    CHECK(is_F_derivation(red, f).ok);
    CHECK(gcd_with_curve(at0, f.coeff[0]) == P("1"));   // gcd(F0,F1)=1 case

    // constant family degenerates
    Factorization single;
    single.factors = {{P("X0*X1"), 1}};
    CHECK_THROWS_AS(reduced_derivation(S({"X0*X1"}, 4), single), InvariantViolation);
    // invalid factorization rejected
    Factorization wrong;
    wrong.factors = {{P("X0"), 1}, {P("X1"), 1}};
    CHECK_THROWS_AS(reduced_derivation(f, wrong), InvalidFactorization);
}

TEST_CASE("projective equivalence: identity and mismatch") {
    const Derivation d = D("X1^2", "X0*X2", "X2^2");
    CHECK(*proj_equiv_check(d, d, P("X0^2+X1*X2")) == 1);
    CHECK(!proj_equiv_check(D("0", "0", "1"), euler_derivation(), P("X0")).has_value());
}

TEST_CASE("projective equivalence: jacobi exchange law") {
    Rng rng(17);
    int done = 0;
    for (int i = 0; i < 40 && done < 6; ++i) {
        const int p_deg = 2 + static_cast<int>(rng.next() % 2);
        const int q_deg = 1 + static_cast<int>(rng.next() % 2);
        const HPoly p = random_hpoly(rng, p_deg, 2);
        const HPoly q1 = random_hpoly(rng, q_deg, 2);
        const HPoly q2 = random_hpoly(rng, q_deg, 2);
        if (p.is_constant() || q1.is_constant() || q2.is_constant()) continue;
        const Derivation d1 = scale(jacobi_derivation(p, q1), q2);
        const Derivation d2 = scale(jacobi_derivation(p, q2), q1);
        if (d1.is_zero() || d2.is_zero()) continue;
        const auto a = proj_equiv_check(d1, d2, p);
        REQUIRE(a.has_value());
        CHECK(*a == 1);   // equal degrees of q1,q2
        ++done;
    }
    CHECK(done == 6);
}

TEST_CASE("projective equivalence: unequal degrees give the degree ratio") {
    Rng rng(19);
    int done = 0;
    for (int i = 0; i < 40 && done < 3; ++i) {
        const HPoly p = random_hpoly(rng, 2, 2);
        const HPoly q1 = random_hpoly(rng, 1, 2);
        const HPoly q2 = random_hpoly(rng, 2, 2);
        if (p.is_constant() || q1.is_constant() || q2.is_constant()) continue;
        const Derivation d1 = scale(jacobi_derivation(p, q1), q2);
        const Derivation d2 = scale(jacobi_derivation(p, q2), q1);
        if (d1.is_zero() || d2.is_zero()) continue;
        const auto a = proj_equiv_check(d1, d2, p);
        REQUIRE(a.has_value());
        CHECK(*a == rational_of(1, 2));   // deg q1 / deg q2
        ++done;
    }
    CHECK(done == 3);
}

TEST_CASE("series projective equivalence at depth") {
    // t-level check of the jacobi exchange on a family
    const HSeries f = S({"X0*X1", "X2^2"}, 4);
    const HSeries h1 = S({"X2"}, 4);
    const HSeries h2 = S({"X0+X1"}, 4);
    const DerivationFamily a = jacobi_derivation(f, h1);
    const DerivationFamily b = jacobi_derivation(f, h2);
    const DerivationFamily d1 = scale(a, h2);
    const DerivationFamily d2 = scale(b, h1);
    const auto w = proj_equiv_check(d1, d2, f, 2);
    REQUIRE(w.has_value());
    CHECK(*w == 1);
}
