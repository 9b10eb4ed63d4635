#include "ramlim/binform.hpp"

#include <sstream>

#include "ramlim/errors.hpp"

namespace ramlim {

// --- QPoly -------------------------------------------------------------------

QPoly::QPoly(Rational c) {
    if (c != 0) c_.push_back(std::move(c));
}

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::t_power(int k) {
    std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
    c.back() = 1;
    return QPoly(std::move(c));
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::coeff(int i) const {
    const auto k = static_cast<std::size_t>(i);
    return k < c_.size() ? c_[k] : Rational(0);
}

QPoly QPoly::operator-() const {
    QPoly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(c));
}

QPoly QPoly::scaled(const Rational& c) const {
    if (c == 0) return QPoly();
    QPoly r(*this);
    for (auto& v : r.c_) v *= c;
    return r;
}

std::optional<QPoly> QPoly::divided_by(const QPoly& d) const {
    if (d.is_zero()) throw InvariantViolation("QPoly division by zero");
    if (is_zero()) return QPoly();
    if (deg() < d.deg()) return std::nullopt;
    std::vector<Rational> rem = c_;
    std::vector<Rational> quot(static_cast<std::size_t>(deg() - d.deg()) + 1,
                               Rational(0));
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Rational q = rem[k + static_cast<std::size_t>(d.deg())] / d.leading();
        quot[k] = q;
        if (q == 0) continue;
        for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= q * d.c_[j];
    }
    for (const auto& r : rem)
        if (r != 0) return std::nullopt;
    return QPoly(std::move(quot));
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

// --- BinaryForm ----------------------------------------------------------------

BinaryForm::BinaryForm(int degree, std::vector<Rational> coeffs)
    : deg_(degree), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != degree + 1)
        throw InvariantViolation("BinaryForm: coefficient count != degree+1");
}

BinaryForm BinaryForm::constant(const Rational& c) {
    return BinaryForm(0, {c});
}

BinaryForm BinaryForm::zero(int degree) {
    return BinaryForm(degree,
                      std::vector<Rational>(static_cast<std::size_t>(degree) + 1,
                                            Rational(0)));
}

bool BinaryForm::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.deg_ != b.deg_)
        throw InvariantViolation("BinaryForm: adding different degrees");
    BinaryForm r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
}

BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) { return a + (-b); }

BinaryForm BinaryForm::operator-() const {
    BinaryForm r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    BinaryForm r = BinaryForm::zero(a.deg_ + b.deg_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

BinaryForm BinaryForm::scaled(const Rational& c) const {
    BinaryForm r = *this;
    for (auto& v : r.c_) v *= c;
    return r;
}

BinaryForm BinaryForm::pow(int k) const {
    BinaryForm r = BinaryForm::constant(Rational(1));
    BinaryForm base = *this;
    for (; k > 0; k >>= 1) {
        if (k & 1) r = r * base;
        if (k > 1) base = base * base;
    }
    return r;
}

QPoly BinaryForm::dehomogenized() const {
    return QPoly(c_);
}

BinaryForm BinaryForm::homogenized(const QPoly& u, int degree) {
    if (u.deg() > degree)
        throw InvariantViolation("BinaryForm: declared degree too small");
    BinaryForm r = BinaryForm::zero(degree);
    for (int i = 0; i <= u.deg(); ++i) r.c_[static_cast<std::size_t>(i)] = u.coeff(i);
    return r;
}

std::optional<BinaryForm> BinaryForm::divided_by(const BinaryForm& d) const {
    if (d.is_zero()) throw InvariantViolation("BinaryForm division by zero");
    if (deg_ < d.deg_) return std::nullopt;
    if (is_zero()) return BinaryForm::zero(deg_ - d.deg_);
    auto q = dehomogenized().divided_by(d.dehomogenized());
    if (!q) return std::nullopt;
    // X1-valuation check: the univariate quotient must fit the form degree.
    if (q->deg() > deg_ - d.deg_) return std::nullopt;
    return homogenized(*q, deg_ - d.deg_);
}

BinaryForm BinaryForm::normalized() const {
    if (is_zero()) return *this;
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != 0) return scaled(1 / c_[i]);
    return *this;
}

bool operator==(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.deg_ == b.deg_ && a.c_ == b.c_;
}

std::string to_string(const BinaryForm& f) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        const Rational& c = f.coeffs()[i];
        if (c == 0) continue;
        const bool neg = c < 0;
        const Rational abs_c = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        const int a = static_cast<int>(i);
        const int b = f.deg() - a;
        const bool is_const = (a == 0 && b == 0);
        if (abs_c != 1 || is_const) out << to_string(abs_c);
        bool printed = (abs_c != 1 || is_const);
        if (a > 0) {
            if (printed) out << "*";
            out << "X0";
            if (a > 1) out << "^" << a;
            printed = true;
        }
        if (b > 0) {
            if (printed) out << "*";
            out << "X1";
            if (b > 1) out << "^" << b;
        }
    }
    return out.str();
}

} // namespace ramlim
