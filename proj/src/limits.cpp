#include "ramlim/limits.hpp"

#include <algorithm>

#include "ramlim/errors.hpp"

namespace ramlim {

namespace {

long binom2(long n) { return n * (n - 1) / 2; }

HPoly coeff_or_zero(const HSeries& f, int k) {
    return k < f.order ? f.coeff[static_cast<std::size_t>(k)] : HPoly();
}

void check_nondegenerate(const HPoly& e, const VFamily& v, const char* engine) {
    LinearSystem ls = make_linear_system(v.at_zero());
    if (!is_finite_ramification(e, ls))
        throw HypothesisError(std::string(engine) +
                              ": V(0) degenerate on the component " + to_string(e));
}

CycleExpr direction_formula(const Factorization& fac, const HPoly& f1,
                            const VFamily& v) {
    const long r1 = static_cast<long>(v.basis.size());
    const long binom = binom2(r1);
    const auto v0 = v.at_zero();
    CycleExpr out;
    for (const auto& [e, mult] : fac.factors)
        out = out + ramification_term(Rational(mult), e, v0);
    if (binom > 0) {
        for (std::size_t i = 0; i < fac.factors.size(); ++i)
            for (std::size_t j = i + 1; j < fac.factors.size(); ++j) {
                const long c = binom * (fac.factors[i].second + fac.factors[j].second);
                out = out + intersection_cycle(Rational(c), fac.factors[i].first,
                                               fac.factors[j].first);
            }
        for (const auto& [e, mult] : fac.factors) {
            if (mult == 1) continue;
            out = out +
                  intersection_cycle(Rational(binom * (mult - 1)), e, f1);
        }
    }
    return out;
}

} // namespace

Rational expected_limit_degree(int curve_degree, int system_degree, int r_plus_1) {
    const long p = curve_degree, d = system_degree, r1 = r_plus_1;
    return Rational(p * r1 * d + binom2(r1) * p * (p - 3));
}

CycleExpr limit_general_direction(const HSeries& f, const Factorization& fac,
                                  const VFamily& v) {
    fac.validate(f.coeff[0]);
    const HPoly f1 = coeff_or_zero(f, 1);
    if (f1.is_zero() || !is_coprime(f.coeff[0], f1))
        throw HypothesisError("general direction: gcd(F0, F1) != 1");
    for (const auto& [e, mult] : fac.factors)
        check_nondegenerate(e, v, "general direction");
    return direction_formula(fac, f1, v);
}

CycleExpr limit_quasi_general(const HSeries& f, const Factorization& fac,
                              const VFamily& v) {
    fac.validate(f.coeff[0]);
    const HPoly f1 = coeff_or_zero(f, 1);
    for (const auto& [e, mult] : fac.factors) {
        if (mult <= 1) continue;
        if (f1.is_zero() || !is_coprime(e, f1))
            throw HypothesisError("quasi-general direction: gcd(E_i, F1) != 1 for "
                                  "the multiple factor " + to_string(e));
    }
    for (const auto& [e, mult] : fac.factors)
        check_nondegenerate(e, v, "quasi-general direction");
    return direction_formula(fac, f1, v);
}

ZeuthenFactorData zeuthen_discriminants(const HSeries& f, const HPoly& ej,
                                        int max_order) {
    if (ej.is_zero() || ej.is_constant())
        throw InvalidFactorization("component must be nonconstant");
    const HPoly& f0 = f.coeff[0];
    const auto bj = divides(ej * ej, f0);
    if (!bj)
        throw InvalidFactorization("f(0) is not divisible by " + to_string(ej) +
                                   "^2");
    ZeuthenFactorData z;
    z.ej = ej;
    z.bj = *bj;

    z.deltas.push_back(coeff_or_zero(f, 1));   // Delta_1 = F_1
    for (int n = 1;; ++n) {
        const HPoly& dn = z.deltas.back();
        const auto reduced = dn.is_zero() ? std::optional<HPoly>(HPoly())
                                          : divides(ej, dn);
        if (!reduced) {
            z.type = n;
            return z;
        }
        if (n >= max_order || n + 1 >= f.order)
            throw TruncationExhausted(
                "no discriminant type for " + to_string(ej) + " up to order " +
                std::to_string(std::min(max_order, f.order - 1)) +
                " (non-reduced generic fiber, or raise the order)");
        z.deltas_reduced.push_back(*reduced);
        // Delta_{n+1} = bj^n F_{n+1} - sum_{i+r=n+1} Delta'_i Delta'_r / 4
        const int m = n + 1;
        HPoly next = z.bj.pow(m - 1) * coeff_or_zero(f, m);
        for (int i = 1; i <= m - 1; ++i) {
            const int r = m - i;
            const HPoly& di = z.deltas_reduced[static_cast<std::size_t>(i - 1)];
            const HPoly& dr = z.deltas_reduced[static_cast<std::size_t>(r - 1)];
            if (di.is_zero() || dr.is_zero()) continue;
            next -= (di * dr).scaled(rational_of(1, 4));
        }
        z.deltas.push_back(std::move(next));
    }
}

bool zeuthen_congruence_holds(const HSeries& f, const ZeuthenFactorData& z, int n) {
    if (n < 0 || n > z.type - 2)
        throw InvariantViolation("congruence index out of the admissible range");
    const int order = n + 3;
    if (f.order < order)
        throw TruncationExhausted("family order too small for the congruence");

    HSeries lhs = series_mul(HSeries::constant(z.bj.pow(2 * n + 1), order),
                             HSeries(f.degree, order,
                                     {f.coeff.begin(), f.coeff.begin() + order}));

    std::vector<HPoly> root(static_cast<std::size_t>(order));
    root[0] = z.ej * z.bj.pow(n + 1);
    for (int i = 1; i <= n + 1; ++i)
        root[static_cast<std::size_t>(i)] =
            (z.deltas_reduced[static_cast<std::size_t>(i - 1)] * z.bj.pow(n + 1 - i))
                .scaled(rational_of(1, 2));
    const HSeries s = make_series(std::move(root), order);
    HSeries rhs = series_mul(s, s);

    std::vector<HPoly> tail(static_cast<std::size_t>(order));
    tail[static_cast<std::size_t>(n + 2)] =
        z.bj.pow(n) * z.deltas[static_cast<std::size_t>(n + 1)];
    rhs = rhs + make_series(std::move(tail), order);

    return series_equal(lhs, rhs);
}

ZeuthenResult limit_zeuthen(const HSeries& f, const Factorization& e_factors,
                            const HPoly& a, const VFamily& v, int max_order) {
    for (const auto& [e, mult] : e_factors.factors)
        if (mult != 1)
            throw InvalidFactorization("E components are declared without "
                                       "multiplicities");
    HPoly e_total(Rational(1));
    for (const auto& [e, mult] : e_factors.factors) e_total = e_total * e;
    if (e_total.is_constant())
        throw InvalidFactorization("no squared components declared");
    e_factors.validate(e_total);

    const HPoly& f0 = f.coeff[0];
    const auto a_exact = divides(e_total * e_total, f0);
    if (!a_exact || normalized(*a_exact) != normalized(a))
        throw InvalidFactorization("f(0) != E^2 * A for the declared split");
    const HPoly a_used = *a_exact;   // absorbs the scalar
    if (!a_used.is_constant()) {
        if (!is_squarefree(a_used))
            throw HypothesisError("zeuthen: A is not square-free");
        if (!is_coprime(e_total, a_used))
            throw HypothesisError("zeuthen: gcd(E, A) != 1");
    }

    ZeuthenResult out;
    for (const std::size_t i : e_factors.obviously_reducible())
        out.warnings.push_back("declared component may be reducible over Q: " +
                               to_string(e_factors.factors[i].first) +
                               " (type detection assumes irreducible components)");

    const auto v0 = v.at_zero();
    for (const auto& [e, mult] : e_factors.factors)
        check_nondegenerate(e, v, "zeuthen");
    if (!a_used.is_constant()) check_nondegenerate(a_used, v, "zeuthen");

    const long r1 = static_cast<long>(v.basis.size());
    const long binom = binom2(r1);

    CycleExpr cycle;
    for (const auto& [e, mult] : e_factors.factors) {
        cycle = cycle + ramification_term(Rational(2), e, v0);
        ZeuthenFactorData z = zeuthen_discriminants(f, e, max_order);
        if (binom > 0) {
            cycle = cycle + intersection_cycle(Rational(binom),
                                               z.deltas.back(), e);
            if (z.type != 2 && !z.bj.is_constant())
                cycle = cycle + intersection_cycle(Rational(-binom * (z.type - 2)),
                                                   z.bj, e);
        }
        out.factors.push_back(std::move(z));
    }
    if (!a_used.is_constant()) {
        cycle = cycle + ramification_term(Rational(1), a_used, v0);
        if (binom > 0)
            cycle = cycle + intersection_cycle(Rational(2 * binom), e_total, a_used);
    }
    out.cycle = std::move(cycle);
    return out;
}

AdaptationEntry build_zeuthen_adaptation(const HSeries& f, const HPoly& a,
                                         const ZeuthenFactorData& z, const HPoly& h) {
    if (!is_coprime(h, f.coeff[0]))
        throw HypothesisError("auxiliary curve must be prime to f(0)");
    AdaptationEntry entry;
    entry.factor = z.ej;
    entry.mult = 2;
    const HPoly& bj = z.bj;
    const int order = f.order;

    if (z.type == 1) {
        // d(t) = (f - f(0))/t;  derivation  bj * jacobi(bj d, ej bj)
        HSeries d = f;
        d.coeff[0] = HPoly();
        d = d.shifted_down(1);
        const HSeries bjd = series_mul(HSeries::constant(bj, d.order), d);
        const DerivationFamily core =
            jacobi_derivation(bjd, HSeries::constant(z.ej * bj, d.order));
        const DerivationFamily dj = scale(core, bj);
        entry.di = scale(dj, h);
        entry.hi = HSeries::constant(bj.pow(3) * z.ej, d.order);
        entry.ki = series_mul(HSeries::constant(bj.pow(5), d.order), d);
    } else {
        const int mj = z.type - 2;
        // Q1 = ej bj^(mj+1) + sum Delta'_i bj^(mj+1-i) t^i / 2
        std::vector<HPoly> q1c(static_cast<std::size_t>(order));
        q1c[0] = z.ej * bj.pow(mj + 1);
        for (int i = 1; i <= mj + 1; ++i)
            q1c[static_cast<std::size_t>(i)] =
                (z.deltas_reduced[static_cast<std::size_t>(i - 1)] *
                 bj.pow(mj + 1 - i))
                    .scaled(rational_of(1, 2));
        const HSeries q1 = make_series(std::move(q1c), order);
        // Q2 = (bj^(2mj+1) f - Q1^2) / t^(mj+2)
        const HSeries lead =
            series_mul(HSeries::constant(bj.pow(2 * mj + 1), order), f);
        HSeries diff = lead - series_mul(q1, q1);
        const auto val = diff.t_valuation();
        if (!val || *val < mj + 2)
            throw InvariantViolation("square completion failed: unexpected "
                                     "valuation in Q2 construction");
        const HSeries q2 = diff.shifted_down(mj + 2);
        if (q2.coeff[0].is_zero() || divides(z.ej, q2.coeff[0]))
            throw InvariantViolation("construction degeneracy: E_j divides Q2(0), "
                                     "contradicting the detected type");
        const DerivationFamily core = jacobi_derivation(q2, q1);
        const DerivationFamily dj = scale(core, bj.pow(2 * mj + 1));
        entry.di = scale(dj, h);
        entry.hi = series_mul(HSeries::constant(bj.pow(2 * (2 * mj + 1)), q1.order), q1);
        entry.ki = series_mul(HSeries::constant(bj.pow(4 * (2 * mj + 1)), q2.order), q2);
    }

    const auto fcheck = is_F_derivation(entry.di, f);
    if (!fcheck.ok)
        throw InvariantViolation("constructed derivation does not leave the "
                                 "family invariant (t-order " +
                                 std::to_string(fcheck.failing_order) + ")");
    if (!gcd_with_curve(entry.di.at_zero(), z.ej).is_constant())
        throw InvariantViolation("constructed derivation is not adapted to " +
                                 to_string(z.ej));
    (void)a;
    return entry;
}

AdaptationData zeuthen_adaptation(const HSeries& f, const Factorization& e_factors,
                                  const HPoly& a,
                                  const std::vector<ZeuthenFactorData>& zs,
                                  const HPoly& h) {
    AdaptationData ad;
    ad.power = 2;
    ad.base = jacobi_derivation(f, HSeries::constant(h, f.order));
    for (const auto& z : zs)
        ad.entries.push_back(build_zeuthen_adaptation(f, a, z, h));
    if (!a.is_constant()) {
        AdaptationEntry ae;
        ae.factor = a;
        ae.mult = 1;
        ae.di = ad.base;
        ae.hi = HSeries::constant(HPoly(Rational(1)), f.order);
        ae.ki = HSeries::constant(HPoly(Rational(1)), f.order);
        ad.entries.push_back(std::move(ae));
    }
    (void)e_factors;
    return ad;
}

AdaptationData quasi_adaptation(const HSeries& f, const Factorization& fac,
                                const HPoly& h) {
    if (!is_coprime(h, f.coeff[0]))
        throw HypothesisError("auxiliary curve must be prime to f(0)");
    HPoly simple_part(Rational(1)), multiple_part(Rational(1));
    for (const auto& [e, mult] : fac.factors)
        (mult == 1 ? simple_part : multiple_part) *= e;

    const DerivationFamily d1 = jacobi_derivation(f, HSeries::constant(h, f.order));
    AdaptationData ad;
    ad.power = 1;
    ad.base = scale(d1, multiple_part);

    DerivationFamily d3;
    if (!multiple_part.is_constant()) {
        const DerivationFamily d2 = reduced_derivation(f, fac);
        d3 = scale(d2, h);
    }
    const HSeries one = HSeries::constant(HPoly(Rational(1)), f.order);
    for (const auto& [e, mult] : fac.factors) {
        AdaptationEntry ae;
        ae.factor = e;
        ae.mult = mult;
        if (mult > 1) {
            ae.di = d3;
            ae.hi = HSeries::constant(simple_part, f.order);
            ae.ki = ae.hi;
        } else {
            ae.di = ad.base;
            ae.hi = one;
            ae.ki = one;
        }
        ad.entries.push_back(std::move(ae));
    }
    return ad;
}

CycleExpr zeuthen_auxiliary_cycle(const HSeries& f, const HPoly& h, int r_plus_1) {
    const long binom = binom2(r_plus_1);
    if (binom == 0) return {};
    // base = jacobi(f, h):  (W . f) = R + binom (h . f),  lim (h . f*) = [h . f0]
    return intersection_cycle(Rational(binom), h, f.coeff[0]);
}

CycleExpr quasi_auxiliary_cycle(const HSeries& f, const Factorization& fac,
                                const HPoly& h, int r_plus_1) {
    const long binom = binom2(r_plus_1);
    if (binom == 0) return {};
    HPoly multiple_part(Rational(1));
    for (const auto& [e, mult] : fac.factors)
        if (mult > 1) multiple_part *= e;
    // base = multiple_part * jacobi(f, h):
    //   (W . f) = R + binom (multiple_part h . f*)
    //   lim (multiple_part . f*) = [multiple_part . f1],  lim (h . f*) = [h . f0]
    CycleExpr out = intersection_cycle(Rational(binom), h, f.coeff[0]);
    if (!multiple_part.is_constant())
        out = out + intersection_cycle(Rational(binom), multiple_part,
                                       coeff_or_zero(f, 1));
    return out;
}

AdaptedResult limit_adapted(const HSeries& f, const Factorization& fac,
                            const VFamily& v, const AdaptationData& ad,
                            int verify_order) {
    fac.validate(f.coeff[0]);
    if (ad.power < 1) throw InvariantViolation("power p must be positive");
    AdaptedResult out;

    const auto base_check = is_F_derivation(ad.base, f);
    if (!base_check.ok)
        throw HypothesisError("adapted: base derivation does not leave the "
                              "family invariant");

    // entries must cover the declared factors exactly
    if (ad.entries.size() != fac.factors.size())
        throw HypothesisError("adapted: one derivation entry per factor required");
    for (const auto& [e, mult] : fac.factors) {
        bool found = false;
        for (const auto& entry : ad.entries)
            if (normalized(entry.factor) == normalized(e) && entry.mult == mult)
                found = true;
        if (!found)
            throw HypothesisError("adapted: no entry for the factor " + to_string(e));
    }

    const auto v0 = v.at_zero();
    const long r1 = static_cast<long>(v.basis.size());
    const long binom = binom2(r1);

    CycleExpr cycle;
    for (const auto& entry : ad.entries) {
        const auto fcheck = is_F_derivation(entry.di, f);
        if (!fcheck.ok)
            throw HypothesisError("adapted: entry derivation for " +
                                  to_string(entry.factor) +
                                  " does not leave the family invariant");
        if (!gcd_with_curve(entry.di.at_zero(), entry.factor).is_constant())
            throw InvariantViolation("adapted: gcd(D_i(0), E_i) != 1 for " +
                                     to_string(entry.factor));
        const HPoly k0 = entry.ki.coeff[0];
        if (k0.is_zero() ||
            (!k0.is_constant() && !is_coprime(k0, entry.factor)))
            throw InvariantViolation("adapted: gcd(K_i(0), E_i) != 1 for " +
                                     to_string(entry.factor));

        if (verify_order > 0) {
            const auto c1 = proj_equiv_check(entry.di, scale(ad.base, entry.hi), f,
                                             verify_order);
            if (!c1)
                out.warnings.push_back("equivalence D_i ~ H_i * base not verified "
                                       "to order " + std::to_string(verify_order) +
                                       " for " + to_string(entry.factor));
            HSeries hpow = HSeries::constant(HPoly(Rational(1)), entry.hi.order);
            for (int k = 0; k < ad.power; ++k) hpow = series_mul(hpow, entry.hi);
            const auto c2 = poly_equiv_check(hpow, entry.ki, f, verify_order);
            if (!c2)
                out.warnings.push_back("equivalence H_i^p ~ K_i not verified to "
                                       "order " + std::to_string(verify_order) +
                                       " for " + to_string(entry.factor));
        }

        const HPoly w = wronskian(entry.di.at_zero(), v0);
        if (w.is_zero() || !is_coprime(w, entry.factor))
            throw InvariantViolation("adapted: degenerate Wronskian on " +
                                     to_string(entry.factor));
        cycle = cycle + intersection_cycle(Rational(entry.mult), w, entry.factor);
        if (binom > 0 && !k0.is_constant())
            cycle = cycle + intersection_cycle(
                                Rational(-entry.mult * binom) / Rational(ad.power),
                                k0, entry.factor);
    }
    out.cycle = std::move(cycle);
    out.verified_order = verify_order;
    return out;
}

} // namespace ramlim
