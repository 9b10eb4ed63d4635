#ifndef RAMLIM_FACTORIZATION_HPP
#define RAMLIM_FACTORIZATION_HPP

#include <utility>
#include <vector>

#include "ramlim/hpoly.hpp"

namespace ramlim {

// User-declared factorization target = c * prod E_i^{e_i} with pairwise
// coprime, square-free, nonconstant E_i. Factorizations are inputs, never
// computed; validate() is the gate every engine passes declared factors
// through.
struct Factorization {
    std::vector<std::pair<HPoly, int>> factors;

    HPoly product() const;
    // Throws InvalidFactorization unless all invariants hold for `target`.
    void validate(const HPoly& target) const;
    // Heuristic warning hook: declared factors the gcd machinery can split.
    std::vector<std::size_t> obviously_reducible() const;
};

} // namespace ramlim

#endif
