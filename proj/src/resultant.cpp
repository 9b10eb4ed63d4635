#include "ramlim/resultant.hpp"

#include <vector>

#include "ramlim/errors.hpp"
#include "ramlim/linalg.hpp"

namespace ramlim {

namespace {

// Evaluate a polynomial in X0,X1 only at (X0,X1) = (x,1).
Rational eval_x0_line(const HPoly& h, const Rational& x) {
    Rational acc(0);
    for (const auto& [e, c] : h.terms()) {
        Rational term = c;
        for (int k = 0; k < e[0]; ++k) term *= x;
        acc += term;
    }
    return acc;
}

Rational det_rational(QMatrix m) {
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m[sel][col] == 0) ++sel;
        if (sel == n) return Rational(0);
        if (sel != col) { std::swap(m[sel], m[col]); det = -det; }
        det *= m[col][col];
        const Rational inv = 1 / m[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            const Rational f = m[i][col] * inv;
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

// Fraction-free determinant over Q[t] (Bareiss); exact at every step.
QPoly det_qpoly(std::vector<std::vector<QPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return QPoly(Rational(1));
    int sign = 1;
    QPoly prev(Rational(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t sel = k;
        while (sel < n && m[sel][k].is_zero()) ++sel;
        if (sel == n) return QPoly();
        if (sel != k) { std::swap(m[sel], m[k]); sign = -sign; }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                QPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = num.divided_by(prev);
                if (!q) throw InvariantViolation("Bareiss: inexact division");
                m[i][j] = std::move(*q);
            }
        prev = m[k][k];
    }
    QPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

std::vector<Rational> sample_points(int count) {
    std::vector<Rational> xs;
    xs.reserve(static_cast<std::size_t>(count));
    long v = 0;
    while (static_cast<int>(xs.size()) < count) {
        xs.emplace_back(v);
        if (v > 0) v = -v;
        else v = -v + 1;
    }
    return xs;
}

void check_projection(const HPoly& p, const char* who) {
    if (p.is_zero()) throw InvariantViolation("resultant of zero polynomial");
    if (p.is_constant()) return;
    if (p.coeff(Expo{0, 0, p.deg()}) == 0)
        throw DegenerateProjection(std::string(who) + " vanishes at (0:0:1)");
}

} // namespace

BinaryForm resultant_x2(const HPoly& p, const HPoly& q) {
    check_projection(p, "first argument");
    check_projection(q, "second argument");
    const int dp = p.deg(), dq = q.deg();
    if (dp == 0) return BinaryForm::constant(p.leading_coeff()).pow(dq);
    if (dq == 0) return BinaryForm::constant(q.leading_coeff()).pow(dp);

    const int out_deg = dp * dq;
    const auto xs = sample_points(out_deg + 1);
    QVec values;
    values.reserve(xs.size());
    const std::size_t n = static_cast<std::size_t>(dp + dq);
    for (const auto& x : xs) {
        // univariate coefficients of p,q in X2 specialized at (x,1)
        QVec pc(static_cast<std::size_t>(dp) + 1), qc(static_cast<std::size_t>(dq) + 1);
        for (int k = 0; k <= dp; ++k) pc[static_cast<std::size_t>(k)] = eval_x0_line(p.coeff_in(2, k), x);
        for (int k = 0; k <= dq; ++k) qc[static_cast<std::size_t>(k)] = eval_x0_line(q.coeff_in(2, k), x);
        QMatrix syl(n, QVec(n, Rational(0)));
        for (int row = 0; row < dq; ++row)
            for (int k = 0; k <= dp; ++k)
                syl[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + dp - k)] =
                    pc[static_cast<std::size_t>(k)];
        for (int row = 0; row < dp; ++row)
            for (int k = 0; k <= dq; ++k)
                syl[static_cast<std::size_t>(dq + row)][static_cast<std::size_t>(row + dq - k)] =
                    qc[static_cast<std::size_t>(k)];
        values.push_back(det_rational(std::move(syl)));
    }
    QVec coeffs = interpolate(xs, values);
    coeffs.resize(static_cast<std::size_t>(out_deg) + 1, Rational(0));
    return BinaryForm(out_deg, std::move(coeffs));
}

FormSeries resultant_x2(const HSeries& p, const HSeries& q) {
    check_projection(p.coeff[0], "first argument at t=0");
    check_projection(q.coeff[0], "second argument at t=0");
    const int dp = p.degree, dq = q.degree;
    const int order = std::min(p.order, q.order);
    if (dp == 0 || dq == 0)
        throw InvariantViolation("series resultant needs nonconstant arguments");

    const int out_deg = dp * dq;
    const auto xs = sample_points(out_deg + 1);
    const std::size_t n = static_cast<std::size_t>(dp + dq);

    // per sample point, the determinant as a t-polynomial, truncated later
    std::vector<QPoly> dets;
    dets.reserve(xs.size());
    for (const auto& x : xs) {
        std::vector<std::vector<QPoly>> syl(n, std::vector<QPoly>(n));
        auto coeff_tpoly = [&](const HSeries& s, int k) {
            std::vector<Rational> tc(static_cast<std::size_t>(order), Rational(0));
            for (int j = 0; j < order; ++j) {
                const HPoly& cj = s.coeff[static_cast<std::size_t>(j)];
                if (cj.is_zero()) continue;
                tc[static_cast<std::size_t>(j)] = eval_x0_line(cj.coeff_in(2, k), x);
            }
            return QPoly(std::move(tc));
        };
        for (int row = 0; row < dq; ++row)
            for (int k = 0; k <= dp; ++k)
                syl[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + dp - k)] =
                    coeff_tpoly(p, k);
        for (int row = 0; row < dp; ++row)
            for (int k = 0; k <= dq; ++k)
                syl[static_cast<std::size_t>(dq + row)][static_cast<std::size_t>(row + dq - k)] =
                    coeff_tpoly(q, k);
        dets.push_back(det_qpoly(std::move(syl)));
    }

    FormSeries out = FormSeries::zero(out_deg, order);
    for (int j = 0; j < order; ++j) {
        QVec values;
        values.reserve(xs.size());
        bool all_zero = true;
        for (const auto& d : dets) {
            values.push_back(d.coeff(j));
            if (values.back() != 0) all_zero = false;
        }
        if (all_zero) continue;
        QVec coeffs = interpolate(xs, values);
        coeffs.resize(static_cast<std::size_t>(out_deg) + 1, Rational(0));
        out.coeff[static_cast<std::size_t>(j)] = BinaryForm(out_deg, std::move(coeffs));
    }
    return out;
}

} // namespace ramlim
