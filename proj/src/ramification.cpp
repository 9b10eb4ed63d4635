#include "ramlim/ramification.hpp"

#include "ramlim/errors.hpp"
#include "ramlim/linalg.hpp"

namespace ramlim {

LinearSystem make_linear_system(std::vector<HPoly> basis) {
    const auto canon = canonical_basis(basis);   // throws on dependence
    LinearSystem v;
    v.degree = canon.front().deg();
    v.basis = std::move(basis);
    return v;
}

bool is_finite_ramification(const HPoly& p, const LinearSystem& v,
                            const std::vector<HPoly>& declared_factors) {
    if (p.is_zero() || p.is_constant())
        throw InvariantViolation("ramification needs a nonconstant curve");
    if (!is_squarefree(p)) return false;
    if (span_divisible(v.basis, p)) return false;
    for (const auto& e : declared_factors)
        if (span_divisible(v.basis, e)) return false;
    return has_finite_ramification(p, v.basis);
}

CycleExpr ramification_cycle(const HPoly& p, const LinearSystem& v) {
    if (!is_finite_ramification(p, v))
        throw HypothesisError(
            "ramification scheme infinite: curve not square-free or system "
            "degenerate on a component of " + to_string(p));
    return ramification_term(Rational(1), p, v.basis);
}

LinearSystem pencil_through_point(const RationalPoint& r,
                                  const std::vector<HPoly>& avoid,
                                  std::uint64_t seed) {
    if (r[0] == 0 && r[1] == 0 && r[2] == 0)
        throw InvariantViolation("pencil point must be a projective point");
    // two independent vectors orthogonal to r
    const std::array<std::array<Rational, 3>, 3> candidates{{
        {r[1], -r[0], Rational(0)},
        {r[2], Rational(0), -r[0]},
        {Rational(0), r[2], -r[1]},
    }};
    std::vector<std::array<Rational, 3>> span;
    for (const auto& w : candidates) {
        if (w[0] == 0 && w[1] == 0 && w[2] == 0) continue;
        if (span.size() == 1) {
            // skip if proportional to the first
            const auto& u = span[0];
            if (u[0] * w[1] == u[1] * w[0] && u[0] * w[2] == u[2] * w[0] &&
                u[1] * w[2] == u[2] * w[1])
                continue;
        }
        span.push_back(w);
        if (span.size() == 2) break;
    }
    if (span.size() != 2)
        throw InvariantViolation("could not span the orthogonal plane");

    auto form_of = [](const std::array<Rational, 3>& c) {
        HPoly l;
        for (int i = 0; i < 3; ++i) l += HPoly::variable(i) * c[static_cast<std::size_t>(i)];
        return l;
    };

    Rng rng(seed);
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::array<Rational, 3> u{}, w{};
        const long a = rng.uniform(-4, 4), b = rng.uniform(-4, 4);
        const long c = rng.uniform(-4, 4), d = rng.uniform(-4, 4);
        if (a * d - b * c == 0) continue;
        for (int i = 0; i < 3; ++i) {
            u[static_cast<std::size_t>(i)] =
                Rational(a) * span[0][static_cast<std::size_t>(i)] +
                Rational(b) * span[1][static_cast<std::size_t>(i)];
            w[static_cast<std::size_t>(i)] =
                Rational(c) * span[0][static_cast<std::size_t>(i)] +
                Rational(d) * span[1][static_cast<std::size_t>(i)];
        }
        const HPoly l1 = form_of(u), l2 = form_of(w);
        if (l1.is_zero() || l2.is_zero()) continue;
        bool ok = true;
        for (const auto& p : avoid) {
            if (p.is_zero() || p.is_constant()) continue;
            if (divides(l1, p) || divides(l2, p)) { ok = false; break; }
        }
        if (!ok) continue;
        return make_linear_system({l1, l2});
    }
    throw HypothesisError("pencil generality guard exhausted (point forced onto "
                          "every admissible curve)");
}

DualSliceReport dual_slice(const CycleExpr& limit_cycle,
                           const std::vector<std::pair<HPoly, int>>& components,
                           const RationalPoint& r) {
    DualSliceReport rep;
    rep.pencil_point = r;
    rep.component_duals = components;

    // a subset of canonical terms is still canonical
    std::vector<CycleTerm> points;
    for (const auto& t : limit_cycle.terms)
        if (std::holds_alternative<IntersectionTerm>(t.node)) points.push_back(t);
    rep.point_cycle = CycleExpr{std::move(points)};

    long p_total = 0, class_sum = 0;
    for (const auto& [e, mult] : components) {
        const long d = e.deg();
        p_total += mult * d;
        class_sum += mult * d * (d - 1);
    }
    rep.total_degree = p_total * (p_total - 1);
    const Rational points_deg = cycle_degree(rep.point_cycle);
    if (Rational(class_sum) + points_deg != Rational(rep.total_degree))
        throw InvariantViolation(
            "dual slice bookkeeping: component classes plus point degree do not "
            "sum to p(p-1)");
    return rep;
}

} // namespace ramlim
