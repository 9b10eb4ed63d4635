#ifndef RAMLIM_LIMITS_HPP
#define RAMLIM_LIMITS_HPP

#include <string>
#include <vector>

#include "ramlim/cycles.hpp"
#include "ramlim/factorization.hpp"
#include "ramlim/foliation.hpp"
#include "ramlim/ramification.hpp"
#include "ramlim/series.hpp"

namespace ramlim {

// Limit of the ramification 0-cycle of V(t) on the family f(t), under the
// general-direction hypothesis gcd(f0, f1) = 1:
//   sum e_i R_{E_i}(V0) + binom * sum_{i<j} (e_i+e_j)[E_i.E_j]
//                       + binom * sum_i (e_i-1)[E_i.f1].
CycleExpr limit_general_direction(const HSeries& f, const Factorization& fac,
                                  const VFamily& v);

// Same closed formula under the weaker hypothesis gcd(E_i, f1) = 1 only for
// the multiple factors.
CycleExpr limit_quasi_general(const HSeries& f, const Factorization& fac,
                              const VFamily& v);

// Discriminant sequence of a squared-factor family f = E^2*A + f1 t + ... for
// one declared component ej of E.
struct ZeuthenFactorData {
    HPoly ej;
    HPoly bj;                             // f(0) / ej^2
    int type = 0;                         // first n with ej not dividing Delta_n
    std::vector<HPoly> deltas;            // Delta_1 .. Delta_type
    std::vector<HPoly> deltas_reduced;    // Delta'_1 .. Delta'_{type-1}
};

// Iterates the discriminant recursion until the divisibility by ej breaks.
// Throws TruncationExhausted when no type emerges from the known coefficients
// (non-reduced generic fiber, or the truncation order is too small to tell).
ZeuthenFactorData zeuthen_discriminants(const HSeries& f, const HPoly& ej,
                                        int max_order);

// The square-completion congruence behind the recursion, checked exactly:
//   bj^(2n+1) f(t)  ==  ( ej bj^(n+1) + sum Delta'_i bj^(n+1-i) t^i / 2 )^2
//                        + bj^n Delta_{n+2} t^(n+2)   mod t^(n+3),
// valid for every n <= type-2.
bool zeuthen_congruence_holds(const HSeries& f, const ZeuthenFactorData& z, int n);

struct ZeuthenResult {
    CycleExpr cycle;
    std::vector<ZeuthenFactorData> factors;
    std::vector<std::string> warnings;
};

// Limit ramification cycle of a family with square multiple part:
//   2 sum_j R_{E_j}(V0) + R_A(V0) + binom*2[E.A]
//   + binom sum_j [Delta_{n_j,j}.E_j] - binom sum_j (n_j-2)[B_j.E_j].
ZeuthenResult limit_zeuthen(const HSeries& f, const Factorization& e_factors,
                            const HPoly& a, const VFamily& v, int max_order);

// Per-component derivation data for the component-wise limit engine.
struct AdaptationEntry {
    HPoly factor;            // E_i
    int mult = 1;            // e_i
    DerivationFamily di;     // adapted F(t)-derivation for this component
    HSeries hi;              // H_i(t) with  di ~ H_i * base  mod f
    HSeries ki;              // K_i(t) with  H_i^p ~ K_i      mod f
};

struct AdaptationData {
    DerivationFamily base;   // the shared F(t)-derivation
    int power = 1;           // p
    std::vector<AdaptationEntry> entries;
};

struct AdaptedResult {
    CycleExpr cycle;         // the limit of (W_base(V) . f), assembled per factor
    int verified_order = 0;  // t-order to which the equivalences were verified
    std::vector<std::string> warnings;
};

// Component-wise limit of the extactic-curve intersection:
//   sum e_i [W_{D_i(0)}(V0) . E_i] - (1/p) binom sum e_i [K_i(0) . E_i].
// Callers subtract their auxiliary cycle to recover the ramification limit.
// Hard gcd conditions are errors; equivalence conditions are verified to
// `verify_order` and downgraded to warnings when not decidable there.
AdaptedResult limit_adapted(const HSeries& f, const Factorization& fac,
                            const VFamily& v, const AdaptationData& ad,
                            int verify_order);

// The explicit adaptation for one squared component, by discriminant type:
// type 1 uses  B_j * jacobi(B_j D(t), E_j B_j); type n >= 2 builds the
// square-completion pair (Q1, Q2) and uses  B_j^(2m+1) * jacobi(Q2, Q1).
AdaptationEntry build_zeuthen_adaptation(const HSeries& f, const HPoly& a,
                                         const ZeuthenFactorData& z, const HPoly& h);

// Assembled instantiations of the component-wise engine:
// the squared-factor family (power 2, entries per E_j plus a trivial A entry) ...
AdaptationData zeuthen_adaptation(const HSeries& f, const Factorization& e_factors,
                                  const HPoly& a,
                                  const std::vector<ZeuthenFactorData>& zs,
                                  const HPoly& h);
// ... and the quasi-general family (power 1, reduced derivation on the
// multiple part, jacobi derivation elsewhere).
AdaptationData quasi_adaptation(const HSeries& f, const Factorization& fac,
                                const HPoly& h);

// The auxiliary cycle a caller of limit_adapted subtracts, for the two
// instantiations above (limits of the divisor cut by the scaling factors).
CycleExpr zeuthen_auxiliary_cycle(const HSeries& f, const HPoly& h, int r_plus_1);
CycleExpr quasi_auxiliary_cycle(const HSeries& f, const Factorization& fac,
                                const HPoly& h, int r_plus_1);

// Generic ramification degree p(r+1)d + binom p(p-3) every limit engine must
// conserve.
Rational expected_limit_degree(int curve_degree, int system_degree, int r_plus_1);

} // namespace ramlim

#endif
