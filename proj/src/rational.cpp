#include "ramlim/rational.hpp"

#include <stdexcept>

namespace ramlim {

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const bool ok = (c >= '0' && c <= '9') || c == '/' ||
                        (c == '-' && (i == 0 || text[i - 1] == '/'));
        if (!ok) throw std::invalid_argument("malformed rational literal: " + text);
    }
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + text);
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    return r.get_str();
}

} // namespace ramlim
