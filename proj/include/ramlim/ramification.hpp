#ifndef RAMLIM_RAMIFICATION_HPP
#define RAMLIM_RAMIFICATION_HPP

#include <array>
#include <utility>
#include <vector>

#include "ramlim/cycles.hpp"
#include "ramlim/hpoly.hpp"

namespace ramlim {

// Linear system of plane curves of one degree, spanned by an independent
// rational basis.
struct LinearSystem {
    int degree = 0;
    std::vector<HPoly> basis;

    int rank_r() const { return static_cast<int>(basis.size()) - 1; }
};

// Validates common degree and independence.
LinearSystem make_linear_system(std::vector<HPoly> basis);

// Finiteness of R_p(V): p square-free and V nondegenerate on every component.
// Nondegeneracy is decided three ways: the divisibility test against p, the
// same test against each declared factor, and the Wronskian gcd criterion
// (which needs no factors). All are exact linear algebra / gcds over Q.
bool is_finite_ramification(const HPoly& p, const LinearSystem& v,
                            const std::vector<HPoly>& declared_factors = {});

// The ramification cycle R_p(V) as a formal cycle. Throws HypothesisError
// when the scheme is not finite.
CycleExpr ramification_cycle(const HPoly& p, const LinearSystem& v);

using RationalPoint = std::array<Rational, 3>;

// Two independent linear forms through r, drawn pseudorandomly and redrawn
// until no basis form divides an entry of `avoid`.
LinearSystem pencil_through_point(const RationalPoint& r,
                                  const std::vector<HPoly>& avoid,
                                  std::uint64_t seed);

// The slice of a limit dual curve by the general dual line of the pencil
// point: component duals carried symbolically, point cycle carried exactly.
struct DualSliceReport {
    CycleExpr point_cycle;                            // intersection part
    std::vector<std::pair<HPoly, int>> component_duals;
    RationalPoint pencil_point;
    long total_degree = 0;                            // p(p-1) bookkeeping
};

// Splits a pencil-limit cycle into component duals (the ramification terms,
// whose multiplicities must match `components`) plus the point cycle, and
// verifies the degree bookkeeping   sum mult*class(E) + deg(points) = p(p-1).
DualSliceReport dual_slice(const CycleExpr& limit_cycle,
                           const std::vector<std::pair<HPoly, int>>& components,
                           const RationalPoint& r);

} // namespace ramlim

#endif
