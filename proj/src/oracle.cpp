#include "ramlim/oracle.hpp"

#include <algorithm>

#include "ramlim/errors.hpp"
#include "ramlim/foliation.hpp"
#include "ramlim/limits.hpp"
#include "ramlim/resultant.hpp"

namespace ramlim {

namespace {
long binom2(long n) { return n * (n - 1) / 2; }
} // namespace

HSeries repadded_polynomial(const HSeries& s, int order) {
    HSeries r = s;
    r.order = order;
    r.coeff.resize(static_cast<std::size_t>(order));
    return r;
}

VFamily repadded_polynomial(const VFamily& v, int order) {
    VFamily r = v;
    r.order = order;
    for (auto& b : r.basis) b = repadded_polynomial(b, order);
    return r;
}

OracleResult oracle_limit(const HSeries& f_in, const VFamily& v_in, const HPoly& h,
                          const CoordChange& m, int order) {
    if (h.is_zero() || h.is_constant())
        throw InvariantViolation("oracle: auxiliary curve must be nonconstant");
    if (!is_coprime(h, f_in.coeff[0]))
        throw InvariantViolation("oracle: gcd(h, f(0)) != 1");

    const HSeries f = apply_coord_change(repadded_polynomial(f_in, order), m);
    const VFamily v = repadded_polynomial(v_in, order);
    const HPoly hm = apply_coord_change(h, m);
    std::vector<HSeries> basis;
    basis.reserve(v.basis.size());
    for (const auto& b : v.basis) basis.push_back(apply_coord_change(b, m));

    const DerivationFamily d = jacobi_derivation(f, HSeries::constant(hm, order));
    HSeries w = wronskian(d, basis);
    const auto wval = w.t_valuation();
    if (!wval)
        throw TruncationExhausted("oracle: extactic family vanishes to the order");
    // a pure t-power in front of W drops out in the saturation; remove it now
    // so the projection precondition applies to the visible part
    if (*wval > 0) w = w.shifted_down(*wval);

    const FormSeries a = resultant_x2(w, f);
    const FormSeries b =
        resultant_x2(HSeries::constant(hm, f.order), f);
    const long binom = binom2(static_cast<long>(v.basis.size()));
    FormSeries bpow = FormSeries::constant(BinaryForm::constant(Rational(1)), b.order);
    for (long k = 0; k < binom; ++k) bpow = series_mul(bpow, b);

    const FormSeries q = divide_by_series(a, bpow);
    const auto val = q.t_valuation();
    if (!val)
        throw TruncationExhausted("oracle: quotient vanishes to the order; raise it");

    OracleResult out;
    out.chow = ChowForm{q.coeff[static_cast<std::size_t>(*val)].normalized(), 1};
    out.used_order = order;
    // Res picks up t^(wval * deg f) from the removed t-power of W.
    out.valuation = *val + *wval * f.degree;
    const Rational expected =
        expected_limit_degree(f.degree, v.degree, static_cast<int>(v.basis.size()));
    if (Rational(out.chow.form.deg()) != expected)
        throw InvariantViolation("oracle: limit form degree mismatch");
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::AllMatch: return "all-match";
        case Verdict::Mismatch: return "mismatch";
        default: return "inconclusive";
    }
}

VerifyReport verify(const CycleExpr& engine_output, const HSeries& f,
                    const VFamily& v, int trials, std::uint64_t seed,
                    int initial_order, int order_cap) {
    VerifyReport report;
    Rng rng(seed);

    const Rational engine_deg = cycle_degree(engine_output);
    const Rational expected = expected_limit_degree(
        f.degree, v.degree, static_cast<int>(v.basis.size()));
    if (engine_deg != expected) {
        report.verdict = Verdict::Mismatch;
        report.witness = "cycle degree " + to_string(engine_deg) +
                         " != generic ramification degree " + to_string(expected);
        report.trials.push_back({initial_order, 0, false});
        return report;
    }

    bool any_inconclusive = false;
    for (int trial = 0; trial < trials; ++trial) {
        // auxiliary curve for the oracle run
        HPoly h;
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 256)
                throw InvariantViolation("verify: no auxiliary curve prime to f(0)");
            h = random_linear_form(rng, 3 + attempt / 32);
            if (!h.is_constant() && is_coprime(h, f.coeff[0])) break;
        }
        const HPoly auxq = draw_aux_linear({&engine_output}, rng);

        bool decided = false;
        bool inconclusive_here = false;
        int order = std::max(initial_order, 2);
        TrialRecord record;
        while (!decided && !inconclusive_here) {
            bool saw_truncation = false;
            for (int redraw = 0; redraw < 25 && !decided; ++redraw) {
                const CoordChange m = random_coord_change(rng.fork(), 4);
                try {
                    const OracleResult oracle = oracle_limit(f, v, h, m, order);
                    const ChowForm mine = realize_chow(engine_output, m, auxq);
                    record.order_used = oracle.used_order;
                    record.valuation = oracle.valuation;
                    record.match = chow_equal(mine, oracle.chow);
                    decided = true;
                } catch (const DegenerateProjection&) {
                    // redraw the coordinate change
                } catch (const TruncationExhausted&) {
                    saw_truncation = true;
                    break;
                }
            }
            if (decided) break;
            if (!saw_truncation)
                throw DegenerateProjection("verify: no usable projection in 25 draws");
            if (order >= order_cap) {
                record.order_used = order;
                record.match = false;
                inconclusive_here = true;
            } else {
                order = std::min(order * 2, order_cap);
            }
        }
        report.trials.push_back(record);
        if (inconclusive_here) {
            any_inconclusive = true;
            continue;
        }
        if (!record.match) {
            report.verdict = Verdict::Mismatch;
            report.witness = "projection trial " + std::to_string(trial) +
                             " produced different limit forms";
            return report;
        }
    }
    report.verdict = any_inconclusive ? Verdict::Inconclusive : Verdict::AllMatch;
    return report;
}

} // namespace ramlim
