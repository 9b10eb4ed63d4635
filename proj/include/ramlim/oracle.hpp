#ifndef RAMLIM_ORACLE_HPP
#define RAMLIM_ORACLE_HPP

#include <string>
#include <vector>

#include "ramlim/cycles.hpp"
#include "ramlim/series.hpp"

namespace ramlim {

struct OracleResult {
    ChowForm chow;        // t=0 slice of the t-saturated quotient series
    int used_order = 0;
    int valuation = 0;    // power of t removed by saturation
};

// Brute-force limit of the ramification cycle through one projection:
// W(t) = wronskian of jacobi(f,h) on v;  A = Res(W, f);  B = Res(h, f);
// Q = A / B^binom (exact since gcd(h, f(0)) = 1);  saturate Q by t and read
// the constant term. Throws DegenerateProjection (redraw m) and
// TruncationExhausted (raise the order).
OracleResult oracle_limit(const HSeries& f, const VFamily& v, const HPoly& h,
                          const CoordChange& m, int order);

enum class Verdict { AllMatch, Mismatch, Inconclusive };

struct TrialRecord {
    int order_used = 0;
    int valuation = 0;
    bool match = false;
};

struct VerifyReport {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<TrialRecord> trials;
    std::string witness;   // populated on mismatch

    bool all_match() const { return verdict == Verdict::AllMatch; }
};

// Compares an engine's limit cycle against independent oracle runs over
// `trials` random (m, h) draws, auto-doubling the truncation order up to
// `order_cap`. Families are treated as polynomial in t: coefficients beyond
// the stored order are zero.
VerifyReport verify(const CycleExpr& engine_output, const HSeries& f,
                    const VFamily& v, int trials, std::uint64_t seed,
                    int initial_order, int order_cap = 64);

// Zero-padding to a larger truncation order (valid for polynomial families).
HSeries repadded_polynomial(const HSeries& s, int order);
VFamily repadded_polynomial(const VFamily& v, int order);

std::string to_string(Verdict v);

} // namespace ramlim

#endif
