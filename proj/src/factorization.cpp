#include "ramlim/factorization.hpp"

#include "ramlim/errors.hpp"

namespace ramlim {

HPoly Factorization::product() const {
    HPoly p(Rational(1));
    for (const auto& [e, mult] : factors) p = p * e.pow(mult);
    return p;
}

void Factorization::validate(const HPoly& target) const {
    if (target.is_zero())
        throw InvalidFactorization("target polynomial is zero");
    for (const auto& [e, mult] : factors) {
        if (mult < 1) throw InvalidFactorization("multiplicity must be positive");
        if (e.is_zero() || e.is_constant())
            throw InvalidFactorization("factors must be nonconstant");
        if (!is_squarefree(e))
            throw InvalidFactorization("factor not square-free: " + to_string(e));
    }
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            if (!is_coprime(factors[i].first, factors[j].first))
                throw InvalidFactorization("factors share a component: " +
                                           to_string(factors[i].first) + ", " +
                                           to_string(factors[j].first));
    // product must equal the target up to a nonzero rational scalar
    const HPoly p = product();
    if (p.deg() != target.deg() ||
        normalized(p) != normalized(target))
        throw InvalidFactorization("product of declared factors != target");
}

std::vector<std::size_t> Factorization::obviously_reducible() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const HPoly& e = factors[i].first;
        if (e.deg() < 2) continue;
        for (int v = 0; v < 3; ++v)
            if (divides(HPoly::variable(v), e)) { out.push_back(i); break; }
    }
    return out;
}

} // namespace ramlim
