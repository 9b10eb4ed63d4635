#ifndef RAMLIM_ERRORS_HPP
#define RAMLIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ramlim {

// Malformed textual input (polynomial grammar, job files).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t position)
        : std::runtime_error(std::move(msg)), pos(position) {}
    std::size_t pos;
};

// A stated hypothesis of an engine or operation does not hold; `condition`
// names the failing check.
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& condition)
        : std::runtime_error("hypothesis violated: " + condition),
          condition(condition) {}
    std::string condition;
};

// A projection-based computation hit a non-generic coordinate choice.
// Callers retry with a fresh coordinate change.
class DegenerateProjection : public std::runtime_error {
public:
    explicit DegenerateProjection(const std::string& what)
        : std::runtime_error("degenerate projection: " + what) {}
};

// Order-by-order series division failed; `order` is the first t-order at
// which the polynomial division was not exact.
class InexactDivision : public std::runtime_error {
public:
    InexactDivision(const std::string& what, int order)
        : std::runtime_error("inexact division at t-order " +
                             std::to_string(order) + ": " + what),
          order(order) {}
    int order;
};

// A series computation ran out of trustworthy t-orders.
class TruncationExhausted : public std::runtime_error {
public:
    explicit TruncationExhausted(const std::string& what)
        : std::runtime_error("truncation exhausted: " + what) {}
};

// A user-declared factorization failed validation.
class InvalidFactorization : public std::runtime_error {
public:
    explicit InvalidFactorization(const std::string& what)
        : std::runtime_error("invalid factorization: " + what) {}
};

// Internal contract violations (invalid cycles, degenerate Wronskians, ...).
class InvariantViolation : public std::runtime_error {
public:
    explicit InvariantViolation(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace ramlim

#endif
