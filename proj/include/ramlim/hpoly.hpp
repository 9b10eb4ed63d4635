#ifndef RAMLIM_HPOLY_HPP
#define RAMLIM_HPOLY_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramlim/rational.hpp"

namespace ramlim {

// Exponent triple (a0,a1,a2) of a monomial X0^a0 X1^a1 X2^a2.
using Expo = std::array<int, 3>;

// Lex-descending order on exponents, so map::begin() is the lex-leading term.
struct LexGreater {
    bool operator()(const Expo& a, const Expo& b) const { return a > b; }
};

// Sparse homogeneous polynomial in X0,X1,X2 over the rationals.
// Invariants: every stored exponent triple sums to deg(); no zero
// coefficients are stored. The zero polynomial is the empty term map with
// conventional degree 0; degree-sensitive code branches on is_zero().
class HPoly {
public:
    using TermMap = std::map<Expo, Rational, LexGreater>;

    HPoly() = default;
    explicit HPoly(const Rational& c);       // constant (degree 0)
    HPoly(int degree, TermMap terms);        // validated

    static HPoly monomial(const Rational& c, const Expo& e);
    static HPoly variable(int i);            // X0, X1 or X2

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || deg_ == 0; }
    int deg() const { return deg_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    Rational coeff(const Expo& e) const;
    const Expo& leading_expo() const;        // lex-first; poly must be nonzero
    const Rational& leading_coeff() const;

    HPoly operator-() const;
    HPoly& operator+=(const HPoly& o);
    HPoly& operator-=(const HPoly& o);
    friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
    friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }
    friend HPoly operator*(const HPoly& a, const HPoly& b);
    HPoly& operator*=(const HPoly& o) { return *this = *this * o; }

    friend bool operator==(const HPoly& a, const HPoly& b) {
        return (a.is_zero() && b.is_zero()) ||
               (a.deg_ == b.deg_ && a.terms_ == b.terms_);
    }
    friend bool operator!=(const HPoly& a, const HPoly& b) { return !(a == b); }

    HPoly scaled(const Rational& c) const;
    HPoly pow(int k) const;                  // k >= 0
    HPoly partial(int var) const;            // d/dX_var

    int degree_in(int var) const;            // max exponent of var; 0 for zero poly
    // Coefficient of var^k, an HPoly in the remaining variables.
    HPoly coeff_in(int var, int k) const;

    // Total order used for canonical sorting of cycle terms.
    static int compare(const HPoly& a, const HPoly& b);

private:
    int deg_ = 0;
    TermMap terms_;

    void insert_term(const Expo& e, const Rational& c);
};

HPoly operator*(const HPoly& a, const Rational& c);
inline HPoly operator*(const Rational& c, const HPoly& a) { return a * c; }

// --- parsing / printing ---------------------------------------------------

// Grammar (whitespace insignificant):
//   expression := ('-')? term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := coeff | var ('^' nat)? | '(' expression ')'
//   var        := 'X0' | 'X1' | 'X2'
//   coeff      := integer ('/' positive-integer)?
// The result must be homogeneous; otherwise a ParseError reports two
// distinct term degrees found.
HPoly parse_poly(const std::string& text);

std::string to_string(const HPoly& p);

// --- ring utilities ---------------------------------------------------------

// Exact quotient q/p if p divides q, or nullopt. p must be nonzero.
std::optional<HPoly> divides(const HPoly& p, const HPoly& q);

// Normalized gcd: lex-first nonzero coefficient scaled to 1.
// Precondition: not both zero.
HPoly gcd(const HPoly& p, const HPoly& q);

// Scale so the lex-first nonzero coefficient is 1 (zero stays zero).
HPoly normalized(const HPoly& p);

bool is_coprime(const HPoly& p, const HPoly& q);

// No repeated factor (over the algebraic closure; valid in characteristic 0).
// Precondition: p nonzero and nonconstant.
bool is_squarefree(const HPoly& p);

HPoly euler_combination(const HPoly& p);     // X0*dP/dX0 + X1*dP/dX1 + X2*dP/dX2

// --- coordinate changes -----------------------------------------------------

// Invertible rational 3x3 substitution X <- M*X, with cached inverse.
class CoordChange {
public:
    static CoordChange identity();
    // Throws InvariantViolation when the matrix is singular.
    explicit CoordChange(std::array<std::array<Rational, 3>, 3> m);

    const std::array<std::array<Rational, 3>, 3>& matrix() const { return m_; }
    const std::array<std::array<Rational, 3>, 3>& inverse() const { return inv_; }
    CoordChange inverted() const;

private:
    std::array<std::array<Rational, 3>, 3> m_;
    std::array<std::array<Rational, 3>, 3> inv_;
};

HPoly apply_coord_change(const HPoly& p, const CoordChange& m);

// Deterministic pseudorandom integer matrix with entries in [-bound, bound],
// resampled until invertible. bound >= 1.
CoordChange random_coord_change(std::uint64_t seed, long bound);

// Random nonzero linear form with coefficients in [-bound, bound].
HPoly random_linear_form(Rng& rng, long bound);

// Random dense-ish homogeneous polynomial of the given degree (test helper).
HPoly random_hpoly(Rng& rng, int degree, long bound);

// Monomial basis of the degree-d slice, in a fixed order; and the coefficient
// vector of a polynomial with respect to it.
std::vector<Expo> monomials_of_degree(int d);
std::vector<Rational> coeff_vector(const HPoly& p, const std::vector<Expo>& basis);
inline int slice_dim(int d) { return (d + 1) * (d + 2) / 2; }

Rational eval_at(const HPoly& p, const std::array<Rational, 3>& point);

} // namespace ramlim

#endif
