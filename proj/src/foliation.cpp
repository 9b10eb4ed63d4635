#include "ramlim/foliation.hpp"

#include <algorithm>

#include "ramlim/errors.hpp"
#include "ramlim/linalg.hpp"

namespace ramlim {

namespace {

int common_degree(const HPoly& a, const HPoly& b, const HPoly& c) {
    int deg = -1;
    for (const HPoly* p : {&a, &b, &c}) {
        if (p->is_zero()) continue;
        if (deg < 0) deg = p->deg();
        else if (p->deg() != deg)
            throw InvariantViolation("derivation coefficients of mixed degree");
    }
    return std::max(deg, 0);
}

inline HPoly zero_like(const HPoly&) { return HPoly(); }
inline HSeries zero_like(const HSeries& s) { return HSeries::zero(0, s.order); }

template <typename T, typename Mul>
T det_laplace(const std::vector<std::vector<T>>& m, Mul mul) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    std::optional<T> acc;
    for (std::size_t r = 0; r < n; ++r) {
        if (m[r][0].is_zero()) continue;
        std::vector<std::vector<T>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r) continue;
            minor.emplace_back(m[i].begin() + 1, m[i].end());
        }
        T term = mul(m[r][0], det_laplace(minor, mul));
        if (!acc) acc = (r % 2 == 0) ? std::move(term) : -std::move(term);
        else if (r % 2 == 0) acc = *acc + term;
        else acc = *acc - term;
    }
    return acc ? *acc : zero_like(m[0][0]);
}

} // namespace

Derivation make_derivation(HPoly g0, HPoly g1, HPoly g2) {
    const int deg = common_degree(g0, g1, g2);
    return Derivation{deg, {std::move(g0), std::move(g1), std::move(g2)}};
}

DerivationFamily make_derivation_family(HSeries g0, HSeries g1, HSeries g2) {
    int deg = -1;
    for (const HSeries* s : {&g0, &g1, &g2}) {
        if (s->is_zero()) continue;
        if (deg < 0) deg = s->degree;
        else if (s->degree != deg)
            throw InvariantViolation("derivation family coefficients of mixed degree");
    }
    deg = std::max(deg, 0);
    const int order = std::min({g0.order, g1.order, g2.order});
    DerivationFamily d{deg, order, {std::move(g0), std::move(g1), std::move(g2)}};
    for (auto& s : d.g) {
        s.order = order;
        s.coeff.resize(static_cast<std::size_t>(order));
        s.degree = deg;
    }
    return d;
}

DerivationFamily constant_family(const Derivation& d, int order) {
    return make_derivation_family(HSeries::constant(d.g[0], order),
                                  HSeries::constant(d.g[1], order),
                                  HSeries::constant(d.g[2], order));
}

Derivation euler_derivation() {
    return make_derivation(HPoly::variable(0), HPoly::variable(1),
                           HPoly::variable(2));
}

HPoly apply(const Derivation& d, const HPoly& p) {
    HPoly r;
    for (int v = 0; v < 3; ++v) {
        const HPoly& gv = d.g[static_cast<std::size_t>(v)];
        if (gv.is_zero()) continue;
        r += gv * p.partial(v);
    }
    return r;
}

namespace {
HSeries partial_series(const HSeries& p, int v) {
    HSeries r = HSeries::zero(std::max(p.degree - 1, 0), p.order);
    for (int k = 0; k < p.order; ++k) {
        const HPoly& c = p.coeff[static_cast<std::size_t>(k)];
        if (!c.is_zero()) r.coeff[static_cast<std::size_t>(k)] = c.partial(v);
    }
    return r;
}
} // namespace

HSeries apply(const DerivationFamily& d, const HSeries& p) {
    HSeries r = HSeries::zero(std::max(p.degree + d.deg - 1, 0),
                              std::min(p.order, d.order));
    for (int v = 0; v < 3; ++v) {
        const HSeries& gv = d.g[static_cast<std::size_t>(v)];
        if (gv.is_zero()) continue;
        r = r + series_mul(gv, partial_series(p, v));
    }
    return r;
}

Derivation scale(const Derivation& d, const HPoly& c) {
    return make_derivation(c * d.g[0], c * d.g[1], c * d.g[2]);
}

DerivationFamily scale(const DerivationFamily& d, const HSeries& c) {
    return make_derivation_family(series_mul(d.g[0], c), series_mul(d.g[1], c),
                                  series_mul(d.g[2], c));
}

DerivationFamily scale(const DerivationFamily& d, const HPoly& c) {
    return scale(d, HSeries::constant(c, d.order));
}

Derivation row_derivation(const std::array<HPoly, 3>& row, const HPoly& q) {
    const HPoly q0 = q.partial(0), q1 = q.partial(1), q2 = q.partial(2);
    return make_derivation(row[1] * q2 - row[2] * q1,
                           row[2] * q0 - row[0] * q2,
                           row[0] * q1 - row[1] * q0);
}

Derivation jacobi_derivation(const HPoly& p, const HPoly& q) {
    if (p.is_constant() || q.is_constant())
        throw InvariantViolation("jacobi derivation of a constant");
    return row_derivation({p.partial(0), p.partial(1), p.partial(2)}, q);
}

DerivationFamily row_derivation(const std::array<HPoly, 3>& row, const HSeries& q) {
    const HSeries q0 = partial_series(q, 0);
    const HSeries q1 = partial_series(q, 1);
    const HSeries q2 = partial_series(q, 2);
    auto mulrow = [&](const HPoly& c, const HSeries& s) {
        return series_mul(HSeries::constant(c, q.order), s);
    };
    return make_derivation_family(mulrow(row[1], q2) - mulrow(row[2], q1),
                                  mulrow(row[2], q0) - mulrow(row[0], q2),
                                  mulrow(row[0], q1) - mulrow(row[1], q0));
}

DerivationFamily jacobi_derivation(const HSeries& p, const HSeries& q) {
    const HSeries p0 = partial_series(p, 0);
    const HSeries p1 = partial_series(p, 1);
    const HSeries p2 = partial_series(p, 2);
    const HSeries q0 = partial_series(q, 0);
    const HSeries q1 = partial_series(q, 1);
    const HSeries q2 = partial_series(q, 2);
    return make_derivation_family(
        series_mul(p1, q2) - series_mul(p2, q1),
        series_mul(p2, q0) - series_mul(p0, q2),
        series_mul(p0, q1) - series_mul(p1, q0));
}

HPoly wronskian(const Derivation& d, const std::vector<HPoly>& basis) {
    const std::size_t n = basis.size();
    if (n == 0) throw InvariantViolation("wronskian of empty basis");
    std::vector<std::vector<HPoly>> rows(n);
    rows[0] = basis;
    for (std::size_t i = 1; i < n; ++i) {
        rows[i].reserve(n);
        for (std::size_t j = 0; j < n; ++j) rows[i].push_back(apply(d, rows[i - 1][j]));
    }
    return det_laplace(rows, [](const HPoly& a, const HPoly& b) { return a * b; });
}

HSeries wronskian(const DerivationFamily& d, const std::vector<HSeries>& basis) {
    const std::size_t n = basis.size();
    if (n == 0) throw InvariantViolation("wronskian of empty basis");
    std::vector<std::vector<HSeries>> rows(n);
    rows[0] = basis;
    for (std::size_t i = 1; i < n; ++i) {
        rows[i].reserve(n);
        for (std::size_t j = 0; j < n; ++j) rows[i].push_back(apply(d, rows[i - 1][j]));
    }
    return det_laplace(rows, [](const HSeries& a, const HSeries& b) {
        return series_mul(a, b);
    });
}

HPoly gcd_with_curve(const Derivation& d, const HPoly& f) {
    if (f.is_constant()) throw InvariantViolation("gcd_with_curve: constant curve");
    const HPoly m01 = HPoly::variable(0) * d.g[1] - HPoly::variable(1) * d.g[0];
    const HPoly m02 = HPoly::variable(0) * d.g[2] - HPoly::variable(2) * d.g[0];
    const HPoly m12 = HPoly::variable(1) * d.g[2] - HPoly::variable(2) * d.g[1];
    HPoly g = f;
    for (const HPoly* m : {&m01, &m02, &m12}) {
        if (m->is_zero()) continue;
        g = gcd(g, *m);
        if (g.is_constant()) break;
    }
    return normalized(g);
}

FDerivationResult is_F_derivation(const DerivationFamily& d, const HSeries& f) {
    const HSeries df = apply(d, f);
    if (df.is_zero()) return {true, -1};
    try {
        (void)divide_by_series(df, f);
        return {true, -1};
    } catch (const InexactDivision& e) {
        return {false, e.order};
    }
}

DerivationFamily reduced_derivation(const HSeries& f, const Factorization& fac) {
    if (f.coeff[0].is_zero())
        throw InvariantViolation("reduced_derivation: f(0) = 0");
    if (f.order < 2)
        throw TruncationExhausted("reduced_derivation needs order >= 2");
    fac.validate(f.coeff[0]);

    std::array<HPoly, 3> nbar;   // (prod E_i) * grad(f0) / f0
    for (std::size_t i = 0; i < fac.factors.size(); ++i) {
        HPoly cof(Rational(fac.factors[i].second));
        for (std::size_t j = 0; j < fac.factors.size(); ++j)
            if (j != i) cof = cof * fac.factors[j].first;
        for (int v = 0; v < 3; ++v)
            nbar[static_cast<std::size_t>(v)] += cof * fac.factors[i].first.partial(v);
    }

    HSeries h = f;   // (f - f(0)) / t
    h.coeff[0] = HPoly();
    const auto v = h.t_valuation();
    if (!v)
        throw InvariantViolation("reduced_derivation degenerate: constant family");
    h = h.shifted_down(1);

    DerivationFamily d = row_derivation(nbar, h);
    if (d.is_zero())
        throw InvariantViolation("reduced_derivation degenerate: zero derivation");
    return d;
}

// --- projective equivalence --------------------------------------------------

namespace {

struct AffineSubspace {
    QVec point;                 // one reachable a-vector
    std::vector<QVec> span;     // directions within the a-projection
};

// Stacked linear system for one linear form L = X_l:
//   X_l * d1_i  ==  sum_j a_j t^j * X_l * d2_i  +  f * g_i  +  N * X_i
// over t-orders 0..depth-1, solved for (a, N, g); returns the projection of
// the solution set onto the a-coordinates.
std::optional<AffineSubspace> solve_one_form(
    int l, const DerivationFamily& d1, const DerivationFamily& d2,
    const HSeries& f, int depth, int m) {
    const int p = f.degree;
    const int target_deg = m + 1;
    const auto monos = monomials_of_degree(target_deg);
    const auto monos_n = monomials_of_degree(m);
    const int sigma = m + 1 - p;
    const auto monos_g = sigma >= 0 ? monomials_of_degree(sigma) : std::vector<Expo>{};

    const std::size_t dim_eq = monos.size();
    const std::size_t dim_n = monos_n.size();
    const std::size_t dim_g = monos_g.size();
    const std::size_t nd = static_cast<std::size_t>(depth);

    const std::size_t col_a = 0;
    const std::size_t col_n = col_a + nd;                  // N_{k,mu}
    const std::size_t col_g = col_n + nd * dim_n;          // g_{k,i,mu}
    const std::size_t cols = col_g + nd * 3 * dim_g;

    QMatrix mat;
    QVec rhs;
    mat.reserve(nd * 3 * dim_eq);
    const HPoly xl = HPoly::variable(l);

    for (int k = 0; k < depth; ++k) {
        for (int i = 0; i < 3; ++i) {
            // precompute the polynomials entering this coordinate equation
            const HPoly lhs =
                d1.g[static_cast<std::size_t>(i)].coeff[static_cast<std::size_t>(k)].is_zero()
                    ? HPoly()
                    : xl * d1.g[static_cast<std::size_t>(i)].coeff[static_cast<std::size_t>(k)];
            std::vector<HPoly> ld2(static_cast<std::size_t>(k) + 1);
            for (int j = 0; j <= k; ++j) {
                const HPoly& c =
                    d2.g[static_cast<std::size_t>(i)].coeff[static_cast<std::size_t>(k - j)];
                if (!c.is_zero()) ld2[static_cast<std::size_t>(j)] = xl * c;
            }
            for (std::size_t mu = 0; mu < monos.size(); ++mu) {
                const Expo& e = monos[mu];
                QVec row(cols, Rational(0));
                // a_j block
                for (int j = 0; j <= k; ++j)
                    row[col_a + static_cast<std::size_t>(j)] =
                        ld2[static_cast<std::size_t>(j)].coeff(e);
                // N block: coefficient of (e - e_i) in N_k
                if (e[static_cast<std::size_t>(i)] >= 1) {
                    Expo en = e;
                    --en[static_cast<std::size_t>(i)];
                    for (std::size_t q = 0; q < dim_n; ++q)
                        if (monos_n[q] == en)
                            row[col_n + static_cast<std::size_t>(k) * dim_n + q] = 1;
                }
                // g block: sum_j f_j * g_{k-j}
                if (sigma >= 0) {
                    for (int j = 0; j <= k && j < f.order; ++j) {
                        const HPoly& fj = f.coeff[static_cast<std::size_t>(j)];
                        if (fj.is_zero()) continue;
                        for (std::size_t q = 0; q < dim_g; ++q) {
                            const Expo& eg = monos_g[q];
                            const Expo diff{e[0] - eg[0], e[1] - eg[1], e[2] - eg[2]};
                            if (diff[0] < 0 || diff[1] < 0 || diff[2] < 0) continue;
                            const Rational c = fj.coeff(diff);
                            if (c == 0) continue;
                            row[col_g +
                                (static_cast<std::size_t>(k - j) * 3 +
                                 static_cast<std::size_t>(i)) *
                                    dim_g +
                                q] += c;
                        }
                    }
                }
                mat.push_back(std::move(row));
                rhs.push_back(lhs.coeff(e));
            }
        }
    }

    LinearSolve solve(std::move(mat), std::move(rhs));
    if (!solve.feasible()) return std::nullopt;

    AffineSubspace out;
    out.point.assign(solve.particular().begin(),
                     solve.particular().begin() + static_cast<long>(nd));
    QMatrix projected;
    for (const auto& kvec : solve.kernel_basis()) {
        QVec a(kvec.begin(), kvec.begin() + static_cast<long>(nd));
        bool nonzero = false;
        for (const auto& c : a)
            if (c != 0) { nonzero = true; break; }
        if (nonzero) projected.push_back(std::move(a));
    }
    // reduce the projected span to an independent set
    if (!projected.empty()) {
        QMatrix copy = projected;
        // crude but tiny: keep rows that increase the rank
        QMatrix kept;
        for (const auto& rowv : projected) {
            QMatrix trial = kept;
            trial.push_back(rowv);
            if (rank(trial) > rank(kept)) kept.push_back(rowv);
            if (static_cast<int>(kept.size()) == depth) break;
        }
        out.span = std::move(kept);
    }
    return out;
}

// Least t-valuation over the three coefficient series (0 for the zero family).
int family_valuation(const DerivationFamily& d) {
    int v = d.order;
    for (const auto& s : d.g) {
        const auto sv = s.t_valuation();
        if (sv) v = std::min(v, *sv);
    }
    return v == d.order ? 0 : v;
}

DerivationFamily shift_family(const DerivationFamily& d, int v) {
    if (v == 0) return d;
    return make_derivation_family(d.g[0].shifted_down(v), d.g[1].shifted_down(v),
                                  d.g[2].shifted_down(v));
}

std::optional<Rational> combine_a_projections(
    const std::vector<AffineSubspace>& parts, int depth, bool strict_nonzero) {
    // intersect the affine subspaces: x = point_l + span_l * alpha_l
    const std::size_t nd = static_cast<std::size_t>(depth);
    std::size_t cols = nd;
    for (const auto& s : parts) cols += s.span.size();
    QMatrix mat;
    QVec rhs;
    std::size_t alpha_base = nd;
    for (const auto& s : parts) {
        for (std::size_t r = 0; r < nd; ++r) {
            QVec row(cols, Rational(0));
            row[r] = 1;
            for (std::size_t w = 0; w < s.span.size(); ++w)
                row[alpha_base + w] = -s.span[w][r];
            mat.push_back(std::move(row));
            rhs.push_back(s.point[r]);
        }
        alpha_base += s.span.size();
    }
    LinearSolve solve(std::move(mat), std::move(rhs));
    if (!solve.feasible()) return std::nullopt;
    const auto forced = solve.forced_value(0);
    if (forced) {
        if (strict_nonzero && *forced == 0) return std::nullopt;
        return *forced;
    }
    return Rational(1);   // a_0 can be chosen freely
}

std::optional<Rational> proj_equiv_oriented(const DerivationFamily& d1_in,
                                            const DerivationFamily& d2_in,
                                            const HSeries& f, int depth,
                                            bool strict_nonzero) {
    if (f.coeff[0].is_zero() || f.coeff[0].is_constant())
        throw InvariantViolation("projective equivalence needs nonconstant f(0)");
    DerivationFamily d1 = shift_family(d1_in, family_valuation(d1_in));
    DerivationFamily d2 = shift_family(d2_in, family_valuation(d2_in));
    if (d1.is_zero() && d2.is_zero()) return Rational(1);
    if (!d1.is_zero() && !d2.is_zero() && d1.deg != d2.deg) return std::nullopt;
    const int m = d1.is_zero() ? d2.deg : d1.deg;
    const int avail = std::min({d1.order, d2.order, f.order});
    const int eff_depth = std::min(depth, avail);

    std::vector<AffineSubspace> parts;
    for (int l = 0; l < 3; ++l) {
        auto part = solve_one_form(l, d1, d2, f, eff_depth, m);
        if (!part) return std::nullopt;
        parts.push_back(std::move(*part));
    }
    return combine_a_projections(parts, eff_depth, strict_nonzero);
}

std::optional<Rational> proj_equiv_impl(const DerivationFamily& d1,
                                        const DerivationFamily& d2,
                                        const HSeries& f, int depth,
                                        bool strict_nonzero) {
    const auto direct = proj_equiv_oriented(d1, d2, f, depth, strict_nonzero);
    if (direct || strict_nonzero) return direct;
    // A Laurent scalar or its inverse is t-regular; try the other orientation.
    const auto swapped = proj_equiv_oriented(d2, d1, f, depth, strict_nonzero);
    if (!swapped) return std::nullopt;
    return (*swapped == 0) ? Rational(0) : Rational(1 / *swapped);
}

} // namespace

std::optional<Rational> proj_equiv_check(const Derivation& d1, const Derivation& d2,
                                         const HPoly& f) {
    return proj_equiv_impl(constant_family(d1, 1), constant_family(d2, 1),
                           HSeries::constant(f, 1), 1, /*strict_nonzero=*/true);
}

std::optional<Rational> proj_equiv_check(const DerivationFamily& d1,
                                         const DerivationFamily& d2,
                                         const HSeries& f, int depth) {
    return proj_equiv_impl(d1, d2, f, depth, /*strict_nonzero=*/false);
}

std::optional<Rational> poly_equiv_check(const HSeries& g_in, const HSeries& h_in,
                                         const HSeries& f, int depth) {
    if (f.coeff[0].is_zero() || f.coeff[0].is_constant())
        throw InvariantViolation("projective equivalence needs nonconstant f(0)");
    const auto vg = g_in.t_valuation(), vh = h_in.t_valuation();
    if (!vg && !vh) return Rational(1);
    if (!vg || !vh) return std::nullopt;
    const HSeries g = g_in.shifted_down(*vg);
    const HSeries h = h_in.shifted_down(*vh);
    if (g.degree != h.degree) return std::nullopt;

    const int dg = g.degree;
    const int sigma = dg - f.degree;
    const auto monos = monomials_of_degree(dg);
    const auto monos_a =
        sigma >= 0 ? monomials_of_degree(sigma) : std::vector<Expo>{};
    const int eff_depth = std::min({depth, g.order, h.order, f.order});
    const std::size_t nd = static_cast<std::size_t>(eff_depth);
    const std::size_t dim_a = monos_a.size();
    const std::size_t cols = nd + nd * dim_a;

    QMatrix mat;
    QVec rhs;
    for (int k = 0; k < eff_depth; ++k) {
        for (std::size_t mu = 0; mu < monos.size(); ++mu) {
            const Expo& e = monos[mu];
            QVec row(cols, Rational(0));
            for (int j = 0; j <= k; ++j) {
                const HPoly& hj = h.coeff[static_cast<std::size_t>(k - j)];
                if (!hj.is_zero()) row[static_cast<std::size_t>(j)] = hj.coeff(e);
            }
            if (sigma >= 0) {
                for (int j = 0; j <= k && j < f.order; ++j) {
                    const HPoly& fj = f.coeff[static_cast<std::size_t>(j)];
                    if (fj.is_zero()) continue;
                    for (std::size_t q = 0; q < dim_a; ++q) {
                        const Expo& ea = monos_a[q];
                        const Expo diff{e[0] - ea[0], e[1] - ea[1], e[2] - ea[2]};
                        if (diff[0] < 0 || diff[1] < 0 || diff[2] < 0) continue;
                        const Rational c = fj.coeff(diff);
                        if (c != 0)
                            row[nd + static_cast<std::size_t>(k - j) * dim_a + q] += c;
                    }
                }
            }
            mat.push_back(std::move(row));
            rhs.push_back(g.coeff[static_cast<std::size_t>(k)].coeff(e));
        }
    }
    LinearSolve solve(std::move(mat), std::move(rhs));
    if (!solve.feasible()) return std::nullopt;
    const auto forced = solve.forced_value(0);
    return forced ? *forced : Rational(1);
}

} // namespace ramlim
