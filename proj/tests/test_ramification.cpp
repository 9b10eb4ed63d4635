#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramlim/errors.hpp"
#include "ramlim/foliation.hpp"
#include "ramlim/ramification.hpp"

using namespace ramlim;

namespace {
HPoly P(const std::string& s) { return parse_poly(s); }

LinearSystem LS(std::vector<std::string> basis) {
    std::vector<HPoly> b;
    for (const auto& s : basis) b.push_back(P(s));
    return make_linear_system(std::move(b));
}
}

TEST_CASE("is_finite_ramification") {
    CHECK(is_finite_ramification(P("X0*X1"), LS({"X0+X1", "X0-X1+X2"})));
    CHECK(!is_finite_ramification(P("X0^2"), LS({"X0+X1", "X2"})));
    // a pencil member divides a component: caught without declared factors
    CHECK(!is_finite_ramification(P("X0*X1"), LS({"X0", "X2"})));
    // and with them
    CHECK(!is_finite_ramification(P("X0*X1"), LS({"X0", "X2"}),
                                  {P("X0"), P("X1")}));
    // degenerate against the full curve
    CHECK(!is_finite_ramification(P("X0+X1"), LS({"X0+X1"})));
}

TEST_CASE("ramification_cycle classical degrees") {
    const LinearSystem pencil = LS({"X0+X1", "X0-X1+X2"});
    CHECK(cycle_degree(ramification_cycle(P("X0*X1-X2^2"), pencil)) == 2);
    CHECK(cycle_degree(ramification_cycle(P("X0^3+X1^3+X2^3"), pencil)) == 6);
    CHECK(ramification_cycle(P("X0+3*X2"), pencil).empty());
    CHECK_THROWS_AS(ramification_cycle(P("X0^2*X1"), pencil), HypothesisError);
}

TEST_CASE("jacobi derivations are prime to square-free curves") {
    // and their Wronskians stay prime to the curve on nondegenerate systems
    Rng rng(29);
    const std::vector<HPoly> curves{P("X0*X1-X2^2"), P("X0*X1*X2"),
                                    P("X0^3+X1^3+X2^3"),
                                    P("X1^2*X2-X0^3-X0^2*X2")};
    for (const auto& c : curves) {
        for (int i = 0; i < 3; ++i) {
            HPoly q;
            do {
                q = random_linear_form(rng, 4);
            } while (!is_coprime(q, c));
            const Derivation d = jacobi_derivation(c, q);
            CHECK(gcd_with_curve(d, c).is_constant());
            const LinearSystem pencil = LS({"X0+X1", "X0-X1+X2"});
            if (is_finite_ramification(c, pencil)) {
                const HPoly w = wronskian(d, pencil.basis);
                CHECK(gcd(w, c).is_constant());
            }
        }
    }
}

TEST_CASE("pencil_through_point") {
    const LinearSystem at_origin =
        pencil_through_point({Rational(0), Rational(0), Rational(1)}, {}, 7);
    for (const auto& b : at_origin.basis) {
        CHECK(b.deg() == 1);
        CHECK(b.coeff({0, 0, 1}) == 0);   // vanishes at (0:0:1)
    }

    const LinearSystem generic =
        pencil_through_point({Rational(1), Rational(1), Rational(1)}, {}, 11);
    for (const auto& b : generic.basis) {
        Rational at_point(0);
        for (const auto& [e, c] : b.terms()) at_point += c;
        CHECK(at_point == 0);
    }

    // guard: basis forms may not divide avoided curves
    const LinearSystem guarded = pencil_through_point(
        {Rational(0), Rational(0), Rational(1)}, {P("X0")}, 13);
    for (const auto& b : guarded.basis)
        CHECK(!divides(b, P("X0")).has_value());

    CHECK_THROWS_AS(
        pencil_through_point({Rational(0), Rational(0), Rational(0)}, {}, 1),
        InvariantViolation);
}

TEST_CASE("dual_slice bookkeeping") {
    // conic degenerating to two lines: limit cycle 2[X0.X1], components
    // X0, X1 with multiplicity 1 each; p = 2, so the slice degree is 2
    const CycleExpr limit = intersection_cycle(Rational(2), P("X0"), P("X1"));
    const DualSliceReport rep =
        dual_slice(limit, {{P("X0"), 1}, {P("X1"), 1}},
                   {Rational(1), Rational(2), Rational(5)});
    CHECK(rep.total_degree == 2);
    CHECK(cycle_degree(rep.point_cycle) == 2);
    CHECK(rep.component_duals.size() == 2);

    // inconsistent component list is rejected
    CHECK_THROWS_AS(dual_slice(limit, {{P("X0*X1-X2^2"), 1}},
                               {Rational(1), Rational(2), Rational(5)}),
                    InvariantViolation);
}
