#ifndef RAMLIM_FOLIATION_HPP
#define RAMLIM_FOLIATION_HPP

#include <array>
#include <optional>
#include <vector>

#include "ramlim/factorization.hpp"
#include "ramlim/hpoly.hpp"
#include "ramlim/series.hpp"

namespace ramlim {

// Homogeneous derivation g0*d/dX0 + g1*d/dX1 + g2*d/dX2, all gi of one
// degree. The all-zero derivation is representable but flagged degenerate;
// operations that need a foliation check for it.
struct Derivation {
    int deg = 0;
    std::array<HPoly, 3> g;

    bool is_zero() const {
        return g[0].is_zero() && g[1].is_zero() && g[2].is_zero();
    }
};

struct DerivationFamily {
    int deg = 0;
    int order = 1;
    std::array<HSeries, 3> g;

    bool is_zero() const {
        return g[0].is_zero() && g[1].is_zero() && g[2].is_zero();
    }
    Derivation at_zero() const {
        return Derivation{deg, {g[0].coeff[0], g[1].coeff[0], g[2].coeff[0]}};
    }
};

Derivation make_derivation(HPoly g0, HPoly g1, HPoly g2);
DerivationFamily make_derivation_family(HSeries g0, HSeries g1, HSeries g2);
DerivationFamily constant_family(const Derivation& d, int order);

Derivation euler_derivation();

HPoly apply(const Derivation& d, const HPoly& p);
HSeries apply(const DerivationFamily& d, const HSeries& p);

Derivation scale(const Derivation& d, const HPoly& c);
DerivationFamily scale(const DerivationFamily& d, const HSeries& c);
DerivationFamily scale(const DerivationFamily& d, const HPoly& c);

// The determinant derivation with rows grad(p), grad(q), grad.
Derivation jacobi_derivation(const HPoly& p, const HPoly& q);
DerivationFamily jacobi_derivation(const HSeries& p, const HSeries& q);

// Determinant derivation with an explicit first row (a gradient substitute).
Derivation row_derivation(const std::array<HPoly, 3>& row, const HPoly& q);
DerivationFamily row_derivation(const std::array<HPoly, 3>& row, const HSeries& q);

// Determinant of the iterated-derivative matrix of the basis; rows are built
// by one derivation application each (row recurrence).
HPoly wronskian(const Derivation& d, const std::vector<HPoly>& basis);
HSeries wronskian(const DerivationFamily& d, const std::vector<HSeries>& basis);

// gcd of f with the maximal minors of [[X0,X1,X2],[g0,g1,g2]]; the constant 1
// means the derivation is prime to f.
HPoly gcd_with_curve(const Derivation& d, const HPoly& f);

struct FDerivationResult {
    bool ok = false;
    int failing_order = -1;   // first t-order where division failed
};

// Does f(t) divide d(t)(f(t)) to the common truncation order?
FDerivationResult is_F_derivation(const DerivationFamily& d, const HSeries& f);

// The reduced family derivation: rows  (prod E_i) * grad(F0)/F0 , grad((F(t)-F0)/t).
// Requires order >= 2 and a validated factorization of f(0).
DerivationFamily reduced_derivation(const HSeries& f, const Factorization& fac);

// Decision procedure for projective equivalence of derivations modulo f:
// searches a scalar a != 0 with  L*(d1 - a*d2) = f*d + N*eps  solvable for
// every linear form L, by exact linear algebra over the three coordinate
// forms. Returns the witness or nullopt.
std::optional<Rational> proj_equiv_check(const Derivation& d1, const Derivation& d2,
                                         const HPoly& f);

// Truncated-family variant, solved jointly over t-orders 0..depth-1 after
// valuation normalization. Used to validate equivalence hypotheses to finite
// order; a nullopt means "not verified at this depth", not a disproof of the
// Laurent-level statement.
std::optional<Rational> proj_equiv_check(const DerivationFamily& d1,
                                         const DerivationFamily& d2,
                                         const HSeries& f, int depth);

// Polynomial-level projective equivalence  g = a*h + A*f  (series version
// stacked over t-orders, same caveat as above).
std::optional<Rational> poly_equiv_check(const HSeries& g, const HSeries& h,
                                         const HSeries& f, int depth);

} // namespace ramlim

#endif
