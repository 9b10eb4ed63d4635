#include <cctype>
#include <set>

#include "ramlim/errors.hpp"
#include "ramlim/hpoly.hpp"

namespace ramlim {

namespace {

// Recursive-descent parser. Internally we accumulate into a possibly
// non-homogeneous sparse map so that parenthesized subexpressions may mix
// degrees as long as the final result is homogeneous.
class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    HPoly run() {
        MixedPoly p = expression();
        skip_ws();
        if (pos_ < s_.size()) fail("unexpected character");
        return to_homogeneous(p);
    }

private:
    using MixedPoly = std::map<Expo, Rational>;

    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos_), pos_);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    static void add_term(MixedPoly& p, const Expo& e, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = p.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) p.erase(it);
        }
    }

    static MixedPoly mul(const MixedPoly& a, const MixedPoly& b) {
        MixedPoly r;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b)
                add_term(r, Expo{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]},
                         ca * cb);
        return r;
    }

    MixedPoly expression() {
        bool negate = eat('-');
        MixedPoly acc = term();
        if (negate)
            for (auto& [e, c] : acc) c = -c;
        for (;;) {
            if (eat('+')) {
                for (const auto& [e, c] : term()) add_term(acc, e, c);
            } else if (eat('-')) {
                for (const auto& [e, c] : term()) add_term(acc, e, -c);
            } else {
                break;
            }
        }
        return acc;
    }

    MixedPoly term() {
        MixedPoly acc = factor();
        while (eat('*')) acc = mul(acc, factor());
        return acc;
    }

    MixedPoly factor() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MixedPoly inner = expression();
            if (!eat(')')) fail("expected ')'");
            return power_suffix(std::move(inner));
        }
        if (c == 'X') return power_suffix(variable());
        if (std::isdigit(static_cast<unsigned char>(c))) return power_suffix(coefficient());
        fail("expected coefficient, variable or '('");
    }

    MixedPoly power_suffix(MixedPoly base) {
        if (!eat('^')) return base;
        const long k = natural();
        MixedPoly r;
        add_term(r, Expo{0, 0, 0}, Rational(1));
        for (long i = 0; i < k; ++i) r = mul(r, base);
        return r;
    }

    MixedPoly variable() {
        ++pos_;   // 'X'
        if (pos_ >= s_.size() || s_[pos_] < '0' || s_[pos_] > '2')
            fail("expected X0, X1 or X2");
        const int v = s_[pos_] - '0';
        ++pos_;
        MixedPoly r;
        Expo e{0, 0, 0};
        e[static_cast<std::size_t>(v)] = 1;
        add_term(r, e, Rational(1));
        return r;
    }

    long natural() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected number");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000) fail("number too large");
            ++pos_;
        }
        return v;
    }

    MixedPoly coefficient() {
        Integer num = digits();
        Rational value(num);
        if (eat('/')) {
            skip_ws();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected denominator");
            Integer den = digits();
            if (den == 0) fail("zero denominator");
            value = Rational(num, den);
            value.canonicalize();
        }
        MixedPoly r;
        add_term(r, Expo{0, 0, 0}, value);
        return r;
    }

    Integer digits() {
        std::string lit;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            lit += s_[pos_++];
        return Integer(lit);
    }

    HPoly to_homogeneous(const MixedPoly& p) const {
        std::set<int> degrees;
        for (const auto& [e, c] : p) degrees.insert(e[0] + e[1] + e[2]);
        if (degrees.size() > 1) {
            auto it = degrees.begin();
            const int d1 = *it++;
            const int d2 = *it;
            throw ParseError("non-homogeneous input: found term degrees " +
                                 std::to_string(d1) + " and " + std::to_string(d2),
                             0);
        }
        HPoly::TermMap terms;
        for (const auto& [e, c] : p) terms.emplace(e, c);
        return HPoly(degrees.empty() ? 0 : *degrees.begin(), std::move(terms));
    }
};

} // namespace

HPoly parse_poly(const std::string& text) { return Parser(text).run(); }

} // namespace ramlim
