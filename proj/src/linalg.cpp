#include "ramlim/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace ramlim {

namespace {

struct Echelon {
    QMatrix rows;                 // RREF of the input
    std::vector<int> pivot_col;   // per pivot row
    std::vector<int> pivot_row;   // per column, -1 if free
};

// In-place reduced row echelon form over the rationals.
Echelon rref(QMatrix m) {
    Echelon e;
    if (m.empty()) return e;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    e.pivot_row.assign(cols, -1);
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        const Rational inv = 1 / m[row][col];
        for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            const Rational f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        e.pivot_col.push_back(static_cast<int>(col));
        e.pivot_row[col] = static_cast<int>(row);
        ++row;
    }
    m.resize(row);
    e.rows = std::move(m);
    return e;
}

} // namespace

int rank(QMatrix m) {
    return static_cast<int>(rref(std::move(m)).pivot_col.size());
}

std::vector<QVec> kernel(QMatrix m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    Echelon e = rref(std::move(m));
    std::vector<QVec> basis;
    for (std::size_t col = 0; col < cols; ++col) {
        if (e.pivot_row[col] >= 0) continue;
        QVec v(cols, Rational(0));
        v[col] = 1;
        for (std::size_t pc = 0; pc < cols; ++pc) {
            const int pr = e.pivot_row[pc];
            if (pr >= 0) v[pc] = -e.rows[static_cast<std::size_t>(pr)][col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

LinearSolve::LinearSolve(QMatrix a, QVec b) {
    const std::size_t rows = a.size();
    if (rows != b.size()) throw std::invalid_argument("solve: shape mismatch");
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    Echelon e = rref(std::move(a));

    feasible_ = true;
    for (const int pc : e.pivot_col)
        if (static_cast<std::size_t>(pc) == cols) feasible_ = false;
    if (!feasible_) return;

    particular_.assign(cols, Rational(0));
    for (std::size_t col = 0; col < cols; ++col) {
        const int pr = e.pivot_row[col];
        if (pr >= 0) particular_[col] = e.rows[static_cast<std::size_t>(pr)][cols];
    }
    varies_.assign(cols, false);
    for (std::size_t col = 0; col < cols; ++col) {
        if (e.pivot_row[col] < 0) {          // free column
            varies_[col] = true;
            QVec v(cols, Rational(0));
            v[col] = 1;
            for (std::size_t pc = 0; pc < cols; ++pc) {
                const int pr = e.pivot_row[pc];
                if (pr < 0) continue;
                const Rational& entry = e.rows[static_cast<std::size_t>(pr)][col];
                if (entry != 0) {
                    v[pc] = -entry;
                    varies_[pc] = true;
                }
            }
            kernel_.push_back(std::move(v));
        }
    }
}

std::optional<Rational> LinearSolve::forced_value(std::size_t var) const {
    if (!feasible_ || varies_[var]) return std::nullopt;
    return particular_[var];
}

bool LinearSolve::is_free(std::size_t var) const {
    return feasible_ && varies_[var];
}

QVec interpolate(const QVec& xs, const QVec& ys) {
    const std::size_t n = xs.size();
    assert(n == ys.size() && n > 0);
    // Newton divided differences.
    QVec dd = ys;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    // Expand the Newton form into monomial coefficients.
    QVec coeffs(n, Rational(0));
    QVec basis(n, Rational(0));   // product (x - x_0)...(x - x_{k-1})
    basis[0] = 1;
    std::size_t basis_deg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i <= basis_deg; ++i) coeffs[i] += dd[k] * basis[i];
        if (k + 1 < n) {
            // basis <- basis * (x - x_k)
            for (std::size_t i = basis_deg + 2; i-- > 0;) {
                Rational shifted = (i > 0) ? basis[i - 1] : Rational(0);
                basis[i] = shifted - xs[k] * basis[i];
            }
            ++basis_deg;
        }
    }
    return coeffs;
}

} // namespace ramlim
