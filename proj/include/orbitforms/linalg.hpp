#pragma once

#include <optional>
#include <vector>

#include "orbitforms/numbers.hpp"

namespace orbitforms {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(RatMat& m);

// One exact solution of A x = b (free variables set to 0), or nullopt if the
// system is inconsistent.
std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b);

// Basis of the null space of A.
std::vector<RatVec> kernel(const RatMat& a);

struct AffineSolution {
    RatVec particular;            // one solution with free variables = 0
    std::vector<RatVec> basis;    // kernel basis: general = particular + sum t_i basis[i]
    std::vector<int> free_cols;   // columns that remained free
};

// Full solution set of A x = b, or nullopt if inconsistent.
std::optional<AffineSolution> solve_affine(const RatMat& a, const RatVec& b);

}  // namespace orbitforms
