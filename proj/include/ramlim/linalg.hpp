#ifndef RAMLIM_LINALG_HPP
#define RAMLIM_LINALG_HPP

#include <optional>
#include <vector>

#include "ramlim/rational.hpp"

namespace ramlim {

using QVec = std::vector<Rational>;
using QMatrix = std::vector<QVec>;   // row-major, ragged rows forbidden

int rank(QMatrix m);

// Kernel basis of m (column space of solutions of m*x = 0).
std::vector<QVec> kernel(QMatrix m);

// Reduced row echelon form of [A | b] analysed once, queried many times.
class LinearSolve {
public:
    LinearSolve(QMatrix a, QVec b);

    bool feasible() const { return feasible_; }
    // A particular solution; valid only when feasible.
    const QVec& particular() const { return particular_; }
    // Basis of the homogeneous solution space.
    const std::vector<QVec>& kernel_basis() const { return kernel_; }

    // Status of one unknown over the solution set:
    //   infeasible system        -> nullopt
    //   forced to a single value -> that value
    //   takes every value        -> nullopt with free()==true
    std::optional<Rational> forced_value(std::size_t var) const;
    bool is_free(std::size_t var) const;

private:
    bool feasible_ = false;
    QVec particular_;
    std::vector<QVec> kernel_;
    std::vector<bool> varies_;   // variable takes more than one value
};

// Newton interpolation: unique polynomial of degree < points.size() through
// (x_i, y_i), returned as dense coefficients (index = power). x_i distinct.
QVec interpolate(const QVec& xs, const QVec& ys);

} // namespace ramlim

#endif
