#pragma once

#include "az/ratfunc.hpp"

#include <vector>

namespace az {

// Result of exact row reduction over the rational-function field.
//
// `particular` is one solution of M y = rhs (free variables set to 0) and
// `nullspace` a basis of solutions of M y = 0, so the full solution set is
// particular + span(nullspace). When the system is inconsistent, consistent
// is false and both vectors are empty.
struct LinearSolution {
    bool consistent = false;
    std::vector<RatFunc> particular;
    std::vector<std::vector<RatFunc>> nullspace;
    // Numerators of the pivots inverted during elimination, in pivot order;
    // used to report generic-case assumptions on symbolic parameters.
    std::vector<MultiPoly> pivot_numerators;
};

// Gauss-Jordan elimination with a deterministic pivot rule: columns are
// scanned left to right and the first row with a nonzero entry is the pivot.
LinearSolution solve_linear(std::vector<std::vector<RatFunc>> matrix, std::vector<RatFunc> rhs);

}  // namespace az
