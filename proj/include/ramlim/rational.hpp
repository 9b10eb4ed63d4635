#ifndef RAMLIM_RATIONAL_HPP
#define RAMLIM_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace ramlim {

// Exact rational scalar. GMP's canonical form is exactly our invariant:
// lowest terms, denominator > 0. All arithmetic preserves it; the only
// entry point that needs explicit canonicalization is string parsing.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational_of(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "n" or "n/d" with optional leading '-'. Throws std::invalid_argument
// on malformed input or zero denominator.
Rational rational_from_string(const std::string& text);

std::string to_string(const Rational& r);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Deterministic 64-bit generator (splitmix64). Self-contained so that seeded
// runs are reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi], both ends included.
    long uniform(long lo, long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    std::uint64_t fork() { return next(); }

private:
    std::uint64_t state_;
};

} // namespace ramlim

#endif
