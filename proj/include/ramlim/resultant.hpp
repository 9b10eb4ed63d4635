#ifndef RAMLIM_RESULTANT_HPP
#define RAMLIM_RESULTANT_HPP

#include "ramlim/binform.hpp"
#include "ramlim/hpoly.hpp"
#include "ramlim/series.hpp"

namespace ramlim {

// Sylvester resultant of p and q viewed as polynomials in X2 over Q[X0,X1],
// a binary form of degree deg(p)*deg(q). Preconditions: neither polynomial
// vanishes at (0:0:1), i.e. both have a nonzero pure-X2 term (otherwise
// DegenerateProjection). Coprimality is the caller's precondition; a zero
// result means it failed.
BinaryForm resultant_x2(const HPoly& p, const HPoly& q);

// The same resultant computed coefficientwise over Q[t]/(t^N) for truncated
// families. The pure-X2 coefficients of p(0) and q(0) must be nonzero so the
// X2-degrees are stable along t.
FormSeries resultant_x2(const HSeries& p, const HSeries& q);

} // namespace ramlim

#endif
