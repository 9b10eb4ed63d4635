#include "ramlim/series.hpp"

#include "ramlim/linalg.hpp"

namespace ramlim {

HSeries make_series(std::vector<HPoly> coeffs, int order) {
    int degree = 0;
    for (const auto& c : coeffs)
        if (!c.is_zero()) { degree = c.deg(); break; }
    for (const auto& c : coeffs)
        if (!c.is_zero() && c.deg() != degree)
            throw InvariantViolation("series coefficients of mixed degree");
    if (static_cast<int>(coeffs.size()) > order)
        throw InvariantViolation("series order smaller than coefficient list");
    return HSeries(degree, order, std::move(coeffs));
}

HSeries apply_coord_change(const HSeries& s, const CoordChange& m) {
    HSeries r = s;
    for (auto& c : r.coeff)
        if (!c.is_zero()) c = apply_coord_change(c, m);
    return r;
}

VFamily saturate_basis(std::vector<HSeries> raw) {
    if (raw.empty()) throw InvariantViolation("saturate_basis: empty input");
    int degree = -1;
    int order = raw.front().order;
    for (const auto& s : raw) {
        order = std::min(order, s.order);
        if (!s.is_zero()) {
            if (degree < 0) degree = s.degree;
            else if (s.degree != degree)
                throw InvariantViolation("saturate_basis: mixed degrees");
        }
    }
    if (degree < 0) throw TruncationExhausted("saturate_basis: all columns zero");
    const auto monos = monomials_of_degree(degree);

    for (;;) {
        // columns = constant coefficients; kernel vectors are dependencies
        QMatrix mat(monos.size(), QVec(raw.size(), Rational(0)));
        for (std::size_t c = 0; c < raw.size(); ++c) {
            const QVec v = coeff_vector(raw[c].coeff[0], monos);
            for (std::size_t r = 0; r < monos.size(); ++r) mat[r][c] = v[r];
        }
        const auto null_space = kernel(std::move(mat));
        if (null_space.empty()) break;

        const QVec& c = null_space.front();
        std::size_t pivot = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) pivot = i;

        HSeries combo = HSeries::zero(degree, order);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (c[i] == 0) continue;
            for (int k = 0; k < order; ++k) {
                const HPoly& src = raw[i].coeff[static_cast<std::size_t>(k)];
                if (src.is_zero()) continue;
                combo.coeff[static_cast<std::size_t>(k)] += src.scaled(c[i]);
            }
        }
        const auto v = combo.t_valuation();
        if (!v)
            throw TruncationExhausted(
                "saturate_basis: column vanished to the stored order "
                "(dependent input or order too small)");
        raw[pivot] = combo.shifted_down(*v);
        order = std::min(order, raw[pivot].order);
        // Re-truncate all columns to the common trustworthy order.
        for (auto& s : raw) {
            s.order = order;
            s.coeff.resize(static_cast<std::size_t>(order));
        }
    }

    VFamily fam;
    fam.degree = degree;
    fam.order = order;
    fam.basis = std::move(raw);
    return fam;
}

} // namespace ramlim
