#ifndef RAMLIM_CYCLES_HPP
#define RAMLIM_CYCLES_HPP

#include <string>
#include <variant>
#include <vector>

#include "ramlim/binform.hpp"
#include "ramlim/hpoly.hpp"

namespace ramlim {

// One point set cut out by two coprime curves.
struct IntersectionTerm {
    HPoly p, q;
};

// The ramification points of the linear system spanned by `basis` on the
// curve p = 0.
struct RamTerm {
    HPoly p;
    std::vector<HPoly> basis;
};

struct CycleTerm {
    Rational mult;
    std::variant<IntersectionTerm, RamTerm> node;
};

// Formal Q-linear combination of 0-cycles, kept in a canonical sorted/merged
// form: polynomials scalar-normalized, intersection pairs ordered, bases in
// reduced echelon form, zero multiplicities and empty (degree-0) terms
// dropped.
struct CycleExpr {
    std::vector<CycleTerm> terms;

    bool empty() const { return terms.empty(); }
    friend CycleExpr operator+(const CycleExpr& a, const CycleExpr& b);
    CycleExpr scaled(const Rational& c) const;
    friend bool operator==(const CycleExpr& a, const CycleExpr& b);
};

// Validating constructors. Both return canonicalized single-term cycles.
CycleExpr intersection_cycle(const Rational& mult, const HPoly& p, const HPoly& q);
CycleExpr ramification_term(const Rational& mult, const HPoly& p,
                            const std::vector<HPoly>& basis);

Rational term_degree(const CycleTerm& t);
Rational cycle_degree(const CycleExpr& c);

// Reduced-echelon representative of the spanned subspace (basis must be
// independent; throws InvariantViolation otherwise).
std::vector<HPoly> canonical_basis(const std::vector<HPoly>& basis);

// Is some nonzero element of span(basis) divisible by `divisor`? Exact linear
// algebra in the combination and quotient coefficients.
bool span_divisible(const std::vector<HPoly>& basis, const HPoly& divisor);

// Finiteness of the ramification scheme of span(basis) on p = 0: p square-free
// and the system nondegenerate on every component (decided by the Wronskian
// gcd criterion with a deterministic auxiliary curve).
bool has_finite_ramification(const HPoly& p, const std::vector<HPoly>& basis);

// Binary form representing a 0-cycle after projection; the stored form is the
// clearing-th power of the cycle's projection (clearing absorbs rational
// multiplicities).
struct ChowForm {
    BinaryForm form;     // normalized: highest nonzero X0-coefficient is 1
    long clearing = 1;
};

// Product over terms of projected resultants; ramification terms realize as
// Res(W,P)/Res(Q,P)^binom. Throws DegenerateProjection when the coordinate
// change puts a relevant point at the projection center (caller redraws), and
// InexactDivision/InvariantViolation on violated cycle invariants.
ChowForm realize_chow(const CycleExpr& c, const CoordChange& m, const HPoly& auxq);

bool chow_equal(const ChowForm& a, const ChowForm& b);

// Degree check plus `trials` independent random-projection comparisons.
bool cycles_equal(const CycleExpr& a, const CycleExpr& b, int trials,
                  std::uint64_t seed);

// Draw a linear form prime to every RamTerm curve of the given cycles.
HPoly draw_aux_linear(const std::vector<const CycleExpr*>& cycles, Rng& rng);

std::string to_string(const CycleExpr& c);

} // namespace ramlim

#endif
