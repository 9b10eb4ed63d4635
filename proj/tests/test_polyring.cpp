#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramlim/errors.hpp"
#include "ramlim/hpoly.hpp"
#include "ramlim/resultant.hpp"

using namespace ramlim;

namespace {
HPoly P(const std::string& s) { return parse_poly(s); }
}

TEST_CASE("parser reads literals, monomials and signs") {
    const HPoly a = P("X0^2 - X1^2");
    CHECK(a.deg() == 2);
    CHECK(a.coeff({2, 0, 0}) == 1);
    CHECK(a.coeff({0, 2, 0}) == -1);
    CHECK(a.term_count() == 2);

    const HPoly b = P("3/2*X0*X1*X2");
    CHECK(b.deg() == 3);
    CHECK(b.coeff({1, 1, 1}) == rational_of(3, 2));

    CHECK(P("0").is_zero());
    CHECK(P(" -X0 + X0 ").is_zero());
    CHECK(P("(X0+X1)^2") == P("X0^2+2*X0*X1+X1^2"));
    CHECK(P("2*(X0+X1)*(X0-X1)") == P("2*X0^2-2*X1^2"));
}

TEST_CASE("parser rejects malformed and non-homogeneous input") {
    CHECK_THROWS_AS(P("X0 + X1^2"), ParseError);
    CHECK_THROWS_AS(P("X3"), ParseError);
    CHECK_THROWS_AS(P("X0 +"), ParseError);
    CHECK_THROWS_AS(P("1/0"), ParseError);
    CHECK_THROWS_AS(P("(X0"), ParseError);
    try {
        P("X0 + X1^2");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("1") != std::string::npos);
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("printing round-trips through the grammar") {
    Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        const HPoly p = random_hpoly(rng, 1 + static_cast<int>(rng.next() % 4), 5);
        CHECK(P(to_string(p)) == p);
    }
    CHECK(to_string(HPoly()) == "0");
    CHECK(to_string(P("-X0+X1")) == "-X0 + X1");
    CHECK(to_string(P("3/2*X1*X2^2")) == "3/2*X1*X2^2");
}

TEST_CASE("ring laws on randomized inputs") {
    Rng rng(7);
    for (int i = 0; i < 40; ++i) {
        const int d = 1 + static_cast<int>(rng.next() % 3);
        const HPoly p = random_hpoly(rng, d, 4);
        const HPoly q = random_hpoly(rng, d, 4);
        const HPoly r = random_hpoly(rng, 2, 4);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
        if (!p.is_zero() && !q.is_zero())
            CHECK((p * q).deg() == p.deg() + q.deg());
    }
}

TEST_CASE("euler identity") {
    Rng rng(3);
    for (int i = 0; i < 25; ++i) {
        const int d = 1 + static_cast<int>(rng.next() % 5);
        const HPoly p = random_hpoly(rng, d, 6);
        CHECK(euler_combination(p) == p.scaled(Rational(p.deg())));
    }
}

TEST_CASE("divides: exact quotients and failures") {
    CHECK(*divides(P("X2"), P("X2^2*X0")) == P("X2*X0"));
    CHECK(*divides(P("X0-X1"), P("X0^2-X1^2")) == P("X0+X1"));
    CHECK(!divides(P("X2"), P("X1^3")).has_value());
    Rng rng(5);
    for (int i = 0; i < 25; ++i) {
        const HPoly a = random_hpoly(rng, 1 + static_cast<int>(rng.next() % 3), 4);
        const HPoly b = random_hpoly(rng, 1 + static_cast<int>(rng.next() % 3), 4);
        const auto q = divides(a, a * b);
        REQUIRE(q.has_value());
        CHECK(*q == b);
    }
}

TEST_CASE("gcd basics") {
    CHECK(gcd(P("X0^2-X1^2"), P("X0^2+2*X0*X1+X1^2")) == P("X0+X1"));
    CHECK(gcd(P("X0^2*X1"), P("X2^3")) == P("1"));
    CHECK(gcd(P("3*X0*X1"), HPoly()) == P("X0*X1"));   // normalized
    CHECK(gcd(HPoly(), P("5*X2")) == P("X2"));
}

TEST_CASE("gcd scaling law on random inputs") {
    Rng rng(23);
    for (int i = 0; i < 15; ++i) {
        const HPoly p = random_hpoly(rng, 1 + static_cast<int>(rng.next() % 3), 3);
        const HPoly q = random_hpoly(rng, 1 + static_cast<int>(rng.next() % 3), 3);
        const HPoly r = random_hpoly(rng, 1 + static_cast<int>(rng.next() % 2), 3);
        const HPoly g = gcd(p * r, q * r);
        // r divides the gcd, and the gcd divides r*gcd(p,q)
        REQUIRE(divides(normalized(r), g).has_value());
        const HPoly expected = normalized(r * gcd(p, q));
        CHECK(g == expected);
    }
}

TEST_CASE("squarefree detection") {
    CHECK(is_squarefree(P("X0*X1")));
    CHECK(!is_squarefree(P("X0^2*X1")));
    CHECK(is_squarefree(P("X0^2+X1^2")));
    CHECK(is_squarefree(P("X0*X1*X2")));
    CHECK(!is_squarefree(P("X0^2*X1+X0^2*X2")));       // X0^2*(X1+X2)
    Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        const HPoly p = random_hpoly(rng, 1 + static_cast<int>(rng.next() % 2), 3);
        CHECK(!is_squarefree(p * p * random_hpoly(rng, 1, 3)));
    }
}

TEST_CASE("squarefree agrees with directional-derivative gcd test") {
    Rng rng(41);
    for (int i = 0; i < 12; ++i) {
        HPoly p = random_hpoly(rng, 2 + static_cast<int>(rng.next() % 2), 3);
        if (static_cast<int>(rng.next() % 2) == 0) p = p * p.partial(0);
        if (p.is_zero() || p.is_constant()) continue;
        // directional derivative along a random direction
        HPoly dp;
        for (int v = 0; v < 3; ++v)
            dp += p.partial(v).scaled(Rational(rng.uniform(-5, 5)));
        if (dp.is_zero()) continue;
        const bool via_direction = gcd(p, dp).is_constant();
        // the directional test can have false positives only on unlucky
        // directions; squarefree(p) implies nothing fails the joint test
        if (via_direction) CHECK(is_squarefree(p));
        if (!is_squarefree(p)) CHECK(!via_direction);
    }
}

TEST_CASE("resultant_x2: frozen values") {
    CHECK(resultant_x2(P("X0+X2"), P("X1-X2")) ==
          BinaryForm(1, {rational_of(1), rational_of(1)}));   // X0 + X1
    // Res(X0*X1+X2^2, X2^2) = X0^2*X1^2
    const BinaryForm r2 = resultant_x2(P("X0*X1+X2^2"), P("X2^2"));
    CHECK(r2.deg() == 4);
    CHECK(r2 == BinaryForm(4, {rational_of(0), rational_of(0), rational_of(1),
                               rational_of(0), rational_of(0)}));
    // dense conic pair, value computed independently
    const BinaryForm r3 = resultant_x2(P("X0^2+2*X0*X2+3*X1*X2+X2^2"),
                                       P("X1^2-X0*X2+X2^2"));
    CHECK(r3 == BinaryForm(4, {rational_of(10), rational_of(15), rational_of(4),
                               rational_of(3), rational_of(4)}));
}

TEST_CASE("resultant_x2: degenerate projection and multiplicativity") {
    CHECK_THROWS_AS(resultant_x2(P("X2"), P("X0")), DegenerateProjection);
    Rng rng(17);
    for (int i = 0; i < 10; ++i) {
        // draw forms with nonzero pure-X2 coefficient
        auto draw = [&](int d) {
            for (;;) {
                HPoly p = random_hpoly(rng, d, 3);
                if (p.coeff({0, 0, d}) != 0) return p;
            }
        };
        const HPoly p = draw(2), q = draw(1), r = draw(1);
        const BinaryForm lhs = resultant_x2(p, q * r);
        const BinaryForm rhs = resultant_x2(p, q) * resultant_x2(p, r);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("coordinate changes") {
    const CoordChange id = CoordChange::identity();
    const HPoly p = P("X0^2*X1 - 2*X1*X2^2");
    CHECK(apply_coord_change(p, id) == p);

    // swap X0 <-> X1
    CoordChange swap({{{rational_of(0), rational_of(1), rational_of(0)},
                       {rational_of(1), rational_of(0), rational_of(0)},
                       {rational_of(0), rational_of(0), rational_of(1)}}});
    CHECK(apply_coord_change(P("X0^2*X1"), swap) == P("X1^2*X0"));

    Rng rng(19);
    for (int i = 0; i < 10; ++i) {
        const CoordChange m = random_coord_change(rng.fork(), 3);
        const HPoly q = random_hpoly(rng, 1 + static_cast<int>(rng.next() % 3), 4);
        CHECK(apply_coord_change(apply_coord_change(q, m), m.inverted()) == q);
        if (!q.is_zero())
            CHECK(apply_coord_change(q, m).deg() == q.deg());
    }
}

TEST_CASE("random_coord_change is deterministic and invertible") {
    const CoordChange a = random_coord_change(424242, 5);
    const CoordChange b = random_coord_change(424242, 5);
    CHECK(a.matrix() == b.matrix());
    int non_identity = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CoordChange m = random_coord_change(seed, 1);
        bool is_id = true;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (m.matrix()[i][j] != Rational(i == j ? 1 : 0)) is_id = false;
        if (!is_id) ++non_identity;
    }
    CHECK(non_identity >= 1);
}

TEST_CASE("binary form division") {
    const BinaryForm f(2, {rational_of(0), rational_of(1), rational_of(0)});   // X0*X1
    const BinaryForm g(1, {rational_of(0), rational_of(1)});                   // X0
    const auto q = f.divided_by(g);
    REQUIRE(q.has_value());
    CHECK(*q == BinaryForm(1, {rational_of(1), rational_of(0)}));              // X1
    // X0^2 not divisible by X0*X1 as forms
    const BinaryForm h(2, {rational_of(0), rational_of(0), rational_of(1)});
    CHECK(!h.divided_by(f).has_value());
}
