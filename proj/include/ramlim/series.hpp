#ifndef RAMLIM_SERIES_HPP
#define RAMLIM_SERIES_HPP

#include <optional>
#include <vector>

#include "ramlim/binform.hpp"
#include "ramlim/errors.hpp"
#include "ramlim/hpoly.hpp"

namespace ramlim {

namespace series_detail {
inline std::optional<HPoly> coeff_div(const HPoly& a, const HPoly& b) {
    return divides(b, a);
}
inline std::optional<BinaryForm> coeff_div(const BinaryForm& a, const BinaryForm& b) {
    return a.divided_by(b);
}
} // namespace series_detail

// Truncated power series in t whose coefficients are homogeneous objects of
// one degree (HPoly or BinaryForm). coeff[i] is trustworthy for i < order.
template <typename C>
struct TSeries {
    int degree = 0;
    int order = 1;
    std::vector<C> coeff;   // size == order; zero slots are default objects

    TSeries() : coeff(1) {}
    TSeries(int degree, int order, std::vector<C> c)
        : degree(degree), order(order), coeff(std::move(c)) {
        if (order < 1) throw InvariantViolation("series order must be >= 1");
        coeff.resize(static_cast<std::size_t>(order));
    }

    static TSeries zero(int degree, int order) {
        return TSeries(degree, order, {});
    }
    static TSeries constant(C c0, int order) {
        const int d = c0.deg();
        std::vector<C> v{std::move(c0)};
        return TSeries(d, order, std::move(v));
    }

    const C& at(int i) const { return coeff[static_cast<std::size_t>(i)]; }

    bool is_zero() const {
        for (const auto& c : coeff)
            if (!c.is_zero()) return false;
        return true;
    }

    C eval_at_zero() const { return coeff[0]; }

    // Least i with coeff[i] != 0, or nullopt meaning ">= order".
    std::optional<int> t_valuation() const {
        for (int i = 0; i < order; ++i)
            if (!coeff[static_cast<std::size_t>(i)].is_zero()) return i;
        return std::nullopt;
    }

    // Multiply by t^k (order bookkeeping: trustworthy range shrinks).
    TSeries shifted_down(int k) const {   // divide by t^k; caller checks valuation
        TSeries r;
        r.degree = degree;
        r.order = order - k;
        if (r.order < 1) throw TruncationExhausted("t-shift below order 1");
        r.coeff.assign(coeff.begin() + k, coeff.end());
        return r;
    }
};

using HSeries = TSeries<HPoly>;
using FormSeries = TSeries<BinaryForm>;

template <typename C>
TSeries<C> operator+(const TSeries<C>& a, const TSeries<C>& b) {
    TSeries<C> r = TSeries<C>::zero(a.is_zero() ? b.degree : a.degree,
                                    std::min(a.order, b.order));
    for (int i = 0; i < r.order; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        if (a.coeff[k].is_zero()) r.coeff[k] = b.coeff[k];
        else if (b.coeff[k].is_zero()) r.coeff[k] = a.coeff[k];
        else r.coeff[k] = a.coeff[k] + b.coeff[k];
    }
    return r;
}

template <typename C>
TSeries<C> operator-(const TSeries<C>& a) {
    TSeries<C> r = a;
    for (auto& c : r.coeff)
        if (!c.is_zero()) c = -c;
    return r;
}

template <typename C>
TSeries<C> operator-(const TSeries<C>& a, const TSeries<C>& b) {
    TSeries<C> r = TSeries<C>::zero(a.is_zero() ? b.degree : a.degree,
                                    std::min(a.order, b.order));
    for (int i = 0; i < r.order; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        if (b.coeff[k].is_zero()) r.coeff[k] = a.coeff[k];
        else if (a.coeff[k].is_zero()) r.coeff[k] = -b.coeff[k];
        else r.coeff[k] = a.coeff[k] - b.coeff[k];
    }
    return r;
}

// Cauchy product truncated at the smaller order.
template <typename C>
TSeries<C> series_mul(const TSeries<C>& a, const TSeries<C>& b) {
    TSeries<C> r = TSeries<C>::zero(a.degree + b.degree, std::min(a.order, b.order));
    for (int i = 0; i < r.order; ++i)
        for (int j = 0; i + j < r.order; ++j) {
            const auto& ca = a.coeff[static_cast<std::size_t>(i)];
            const auto& cb = b.coeff[static_cast<std::size_t>(j)];
            if (ca.is_zero() || cb.is_zero()) continue;
            auto& slot = r.coeff[static_cast<std::size_t>(i + j)];
            if (slot.is_zero()) slot = ca * cb;
            else slot = slot + ca * cb;
        }
    return r;
}

template <typename C>
TSeries<C> series_mul(const TSeries<C>& a, const C& c) {
    return series_mul(a, TSeries<C>::constant(c, a.order));
}

template <typename C>
std::optional<int> t_valuation(const TSeries<C>& a) { return a.t_valuation(); }

// Order-by-order exact division: returns q with b*q == a to the common
// trustworthy order. Handles positive t-valuation of b by shifting both
// sides. Throws InexactDivision at the first failing order, or
// TruncationExhausted when b vanishes to its whole order.
template <typename C>
TSeries<C> divide_by_series(const TSeries<C>& a, const TSeries<C>& b) {
    const auto vb = b.t_valuation();
    if (!vb) throw TruncationExhausted("series division by 0 (to stored order)");
    const int w = *vb;
    if (w > 0) {
        const auto va = a.t_valuation();
        if (a.is_zero()) {
            // 0 / b: trustworthy only to what the shifted order supports
            return TSeries<C>::zero(a.degree - b.degree,
                                    std::min(a.order, b.order) - w);
        }
        if (*va < w)
            throw InexactDivision("dividend valuation below divisor valuation", *va);
        return divide_by_series(a.shifted_down(w), b.shifted_down(w));
    }
    const int n = std::min(a.order, b.order);
    TSeries<C> q = TSeries<C>::zero(a.degree - b.degree, n);
    for (int k = 0; k < n; ++k) {
        C rhs = a.coeff[static_cast<std::size_t>(k)];
        for (int j = 1; j <= k; ++j) {
            const auto& bj = b.coeff[static_cast<std::size_t>(j)];
            const auto& qk = q.coeff[static_cast<std::size_t>(k - j)];
            if (bj.is_zero() || qk.is_zero()) continue;
            if (rhs.is_zero()) rhs = -(bj * qk);
            else rhs = rhs - bj * qk;
        }
        if (rhs.is_zero()) continue;
        auto quot = series_detail::coeff_div(rhs, b.coeff[0]);
        if (!quot) throw InexactDivision("coefficient division failed", k);
        q.coeff[static_cast<std::size_t>(k)] = std::move(*quot);
    }
    return q;
}

template <typename C>
bool series_equal(const TSeries<C>& a, const TSeries<C>& b) {
    const int n = std::min(a.order, b.order);
    for (int i = 0; i < n; ++i) {
        const auto& ca = a.coeff[static_cast<std::size_t>(i)];
        const auto& cb = b.coeff[static_cast<std::size_t>(i)];
        if (ca.is_zero() != cb.is_zero()) return false;
        if (!ca.is_zero() && !(ca == cb)) return false;
    }
    return true;
}

// Family of linear systems: a basis of homogeneous series whose constant
// coefficients are linearly independent (the saturated normal form).
struct VFamily {
    int degree = 0;
    int order = 1;
    std::vector<HSeries> basis;

    int rank_r() const { return static_cast<int>(basis.size()) - 1; }
    std::vector<HPoly> at_zero() const {
        std::vector<HPoly> v;
        v.reserve(basis.size());
        for (const auto& s : basis) v.push_back(s.coeff[0]);
        return v;
    }
};

// Column operations over the rationals plus division by t until the constant
// coefficients are independent. Throws TruncationExhausted when a column dies
// to the stored order (inputs dependent over the Laurent field, or order too
// small).
VFamily saturate_basis(std::vector<HSeries> raw);

// Parse helper: a family given by its coefficient polynomials (higher
// coefficients implicitly zero), padded to `order`.
HSeries make_series(std::vector<HPoly> coeffs, int order);

HSeries apply_coord_change(const HSeries& s, const CoordChange& m);

} // namespace ramlim

#endif
