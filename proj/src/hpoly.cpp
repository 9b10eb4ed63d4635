#include "ramlim/hpoly.hpp"

#include <sstream>

#include "ramlim/errors.hpp"

namespace ramlim {

namespace {
int expo_sum(const Expo& e) { return e[0] + e[1] + e[2]; }
} // namespace

HPoly::HPoly(const Rational& c) {
    if (c != 0) terms_.emplace(Expo{0, 0, 0}, c);
}

HPoly::HPoly(int degree, TermMap terms) : deg_(degree), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) { it = terms_.erase(it); continue; }
        if (expo_sum(it->first) != deg_)
            throw InvariantViolation("HPoly: mixed-degree term map");
        ++it;
    }
    if (terms_.empty()) deg_ = 0;
}

HPoly HPoly::monomial(const Rational& c, const Expo& e) {
    HPoly p;
    if (c != 0) {
        p.deg_ = expo_sum(e);
        p.terms_.emplace(e, c);
    }
    return p;
}

HPoly HPoly::variable(int i) {
    Expo e{0, 0, 0};
    e[static_cast<std::size_t>(i)] = 1;
    return monomial(Rational(1), e);
}

Rational HPoly::coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

const Expo& HPoly::leading_expo() const {
    if (is_zero()) throw InvariantViolation("leading term of zero polynomial");
    return terms_.begin()->first;
}

const Rational& HPoly::leading_coeff() const {
    if (is_zero()) throw InvariantViolation("leading term of zero polynomial");
    return terms_.begin()->second;
}

void HPoly::insert_term(const Expo& e, const Rational& c) {
    if (c == 0) return;
    if (terms_.empty()) deg_ = expo_sum(e);
    else if (expo_sum(e) != deg_)
        throw InvariantViolation("HPoly: mixing degrees " + std::to_string(deg_) +
                                 " and " + std::to_string(expo_sum(e)));
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
            if (terms_.empty()) deg_ = 0;
        }
    }
}

HPoly HPoly::operator-() const {
    HPoly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

HPoly& HPoly::operator+=(const HPoly& o) {
    for (const auto& [e, c] : o.terms_) insert_term(e, c);
    return *this;
}

HPoly& HPoly::operator-=(const HPoly& o) {
    for (const auto& [e, c] : o.terms_) insert_term(e, -c);
    return *this;
}

HPoly operator*(const HPoly& a, const HPoly& b) {
    HPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.deg_ = a.deg_ + b.deg_;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            const Expo e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            auto [it, fresh] = r.terms_.emplace(e, ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
        it = (it->second == 0) ? r.terms_.erase(it) : std::next(it);
    if (r.terms_.empty()) r.deg_ = 0;
    return r;
}

HPoly operator*(const HPoly& a, const Rational& c) { return a.scaled(c); }

HPoly HPoly::scaled(const Rational& c) const {
    HPoly r;
    if (c == 0 || is_zero()) return r;
    r.deg_ = deg_;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

HPoly HPoly::pow(int k) const {
    HPoly r{Rational(1)};
    HPoly base(*this);
    for (; k > 0; k >>= 1) {
        if (k & 1) r = r * base;
        if (k > 1) base = base * base;
    }
    return r;
}

HPoly HPoly::partial(int var) const {
    HPoly r;
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Expo d = e;
        --d[v];
        r.insert_term(d, c * e[v]);
    }
    return r;
}

int HPoly::degree_in(int var) const {
    int d = 0;
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
}

HPoly HPoly::coeff_in(int var, int k) const {
    HPoly r;
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
        if (e[v] != k) continue;
        Expo d = e;
        d[v] = 0;
        r.insert_term(d, c);
    }
    return r;
}

int HPoly::compare(const HPoly& a, const HPoly& b) {
    if (a.deg_ != b.deg_) return a.deg_ < b.deg_ ? -1 : 1;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return LexGreater{}(ia->first, ib->first) ? 1 : -1;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    }
    if (ia != a.terms_.end()) return 1;
    if (ib != b.terms_.end()) return -1;
    return 0;
}

std::string to_string(const HPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        const bool negative = c < 0;
        const Rational abs_c = negative ? Rational(-c) : c;
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        const bool is_const = (e[0] == 0 && e[1] == 0 && e[2] == 0);
        const bool unit = (abs_c == 1);
        if (!unit || is_const) out << to_string(abs_c);
        bool printed_var = !unit || is_const;
        for (int v = 0; v < 3; ++v) {
            const int k = e[static_cast<std::size_t>(v)];
            if (k == 0) continue;
            if (printed_var) out << "*";
            out << "X" << v;
            if (k > 1) out << "^" << k;
            printed_var = true;
        }
    }
    return out.str();
}

HPoly normalized(const HPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(1 / p.leading_coeff());
}

HPoly euler_combination(const HPoly& p) {
    HPoly r;
    for (int v = 0; v < 3; ++v) r += HPoly::variable(v) * p.partial(v);
    return r;
}

// --- coordinate changes -----------------------------------------------------

namespace {

using Mat3 = std::array<std::array<Rational, 3>, 3>;

Rational det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 invert3(const Mat3& m, const Rational& det) {
    Mat3 inv;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
            const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            // adjugate: cofactor of (j,i)
            inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (m[static_cast<std::size_t>(j1)][static_cast<std::size_t>(i1)] *
                     m[static_cast<std::size_t>(j2)][static_cast<std::size_t>(i2)] -
                 m[static_cast<std::size_t>(j1)][static_cast<std::size_t>(i2)] *
                     m[static_cast<std::size_t>(j2)][static_cast<std::size_t>(i1)]) /
                det;
        }
    return inv;
}

} // namespace

CoordChange::CoordChange(Mat3 m) : m_(std::move(m)) {
    const Rational det = det3(m_);
    if (det == 0) throw InvariantViolation("CoordChange: singular matrix");
    inv_ = invert3(m_, det);
}

CoordChange CoordChange::identity() {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                Rational(i == j ? 1 : 0);
    return CoordChange(m);
}

CoordChange CoordChange::inverted() const { return CoordChange(inv_); }

HPoly apply_coord_change(const HPoly& p, const CoordChange& m) {
    if (p.is_zero()) return p;
    std::array<HPoly, 3> image;
    for (int i = 0; i < 3; ++i) {
        HPoly li;
        for (int j = 0; j < 3; ++j)
            li += HPoly::variable(j) *
                  m.matrix()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        image[static_cast<std::size_t>(i)] = li;
    }
    // power cache per variable
    std::array<std::vector<HPoly>, 3> powers;
    for (int i = 0; i < 3; ++i)
        powers[static_cast<std::size_t>(i)] = {HPoly(Rational(1)),
                                               image[static_cast<std::size_t>(i)]};
    auto power = [&](int v, int k) -> const HPoly& {
        auto& cache = powers[static_cast<std::size_t>(v)];
        while (static_cast<int>(cache.size()) <= k)
            cache.push_back(cache.back() * cache[1]);
        return cache[static_cast<std::size_t>(k)];
    };
    HPoly r;
    for (const auto& [e, c] : p.terms()) {
        HPoly term(c);
        for (int v = 0; v < 3; ++v)
            if (e[static_cast<std::size_t>(v)] > 0)
                term = term * power(v, e[static_cast<std::size_t>(v)]);
        r += term;
    }
    return r;
}

CoordChange random_coord_change(std::uint64_t seed, long bound) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        Mat3 m;
        for (auto& row : m)
            for (auto& entry : row) entry = Rational(rng.uniform(-bound, bound));
        if (det3(m) != 0) return CoordChange(m);
    }
    throw InvariantViolation("random_coord_change: no invertible draw");
}

HPoly random_linear_form(Rng& rng, long bound) {
    for (;;) {
        HPoly l;
        for (int v = 0; v < 3; ++v)
            l += HPoly::variable(v) * Rational(rng.uniform(-bound, bound));
        if (!l.is_zero()) return l;
    }
}

std::vector<Expo> monomials_of_degree(int d) {
    std::vector<Expo> out;
    out.reserve(static_cast<std::size_t>(slice_dim(d)));
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b) out.push_back(Expo{a, b, d - a - b});
    return out;
}

std::vector<Rational> coeff_vector(const HPoly& p, const std::vector<Expo>& basis) {
    std::vector<Rational> v(basis.size(), Rational(0));
    for (std::size_t i = 0; i < basis.size(); ++i) v[i] = p.coeff(basis[i]);
    return v;
}

Rational eval_at(const HPoly& p, const std::array<Rational, 3>& point) {
    Rational acc(0);
    for (const auto& [e, c] : p.terms()) {
        Rational term = c;
        for (int v = 0; v < 3; ++v)
            for (int k = 0; k < e[static_cast<std::size_t>(v)]; ++k)
                term *= point[static_cast<std::size_t>(v)];
        acc += term;
    }
    return acc;
}

HPoly random_hpoly(Rng& rng, int degree, long bound) {
    for (;;) {
        HPoly p;
        for (int a = 0; a <= degree; ++a)
            for (int b = 0; a + b <= degree; ++b) {
                const Rational c(rng.uniform(-bound, bound));
                if (c != 0)
                    p += HPoly::monomial(c, Expo{a, b, degree - a - b});
            }
        if (!p.is_zero()) return p;
    }
}

} // namespace ramlim
