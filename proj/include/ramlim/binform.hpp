#ifndef RAMLIM_BINFORM_HPP
#define RAMLIM_BINFORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "ramlim/rational.hpp"

namespace ramlim {

// Dense univariate polynomial over the rationals; workhorse behind binary
// forms and polynomial-matrix determinants. coeffs[i] is the t^i coefficient;
// no trailing zeros are stored, the zero polynomial is the empty vector.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(Rational c);
    explicit QPoly(std::vector<Rational> coeffs);

    static QPoly t_power(int k);

    bool is_zero() const { return c_.empty(); }
    int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    const Rational& leading() const { return c_.back(); }

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly scaled(const Rational& c) const;
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    std::optional<QPoly> divided_by(const QPoly& d) const;   // exact or nullopt
    Rational eval(const Rational& x) const;

private:
    std::vector<Rational> c_;
    void trim();
};

// Homogeneous binary form in X0,X1 of a fixed degree. coefficient(k) goes
// with X0^k X1^(deg-k). Unlike HPoly, a zero form still carries its degree,
// since forms of one degree populate series coefficient slots.
class BinaryForm {
public:
    BinaryForm() = default;                       // zero of degree 0
    BinaryForm(int degree, std::vector<Rational> coeffs);
    static BinaryForm constant(const Rational& c);
    static BinaryForm zero(int degree);

    bool is_zero() const;
    int deg() const { return deg_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }

    friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
    friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b);
    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
    BinaryForm operator-() const;
    BinaryForm scaled(const Rational& c) const;
    BinaryForm pow(int k) const;                  // k >= 0

    // Exact quotient of forms (degree difference enforced), or nullopt.
    std::optional<BinaryForm> divided_by(const BinaryForm& d) const;

    // Scale so the coefficient of the highest X0 power present is 1.
    BinaryForm normalized() const;

    friend bool operator==(const BinaryForm& a, const BinaryForm& b);
    friend bool operator!=(const BinaryForm& a, const BinaryForm& b) {
        return !(a == b);
    }

    // Univariate restriction X1 = 1 (degree may drop).
    QPoly dehomogenized() const;
    // Inverse of dehomogenized() at a declared degree; u.deg() <= degree.
    static BinaryForm homogenized(const QPoly& u, int degree);

private:
    int deg_ = 0;
    std::vector<Rational> c_{Rational(0)};
};

std::string to_string(const BinaryForm& f);

} // namespace ramlim

#endif
