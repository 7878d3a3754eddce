#pragma once

#include <optional>
#include <vector>

#include "bfc/rational.hpp"

namespace bfc {

using RatMatrix = std::vector<std::vector<Rational>>;
using RatVector = std::vector<Rational>;

// Exact Gaussian elimination; nullopt when singular.
std::optional<RatVector> solve_linear(RatMatrix a, RatVector b);

// Phase-one simplex with Bland's rule: is {y : A y >= b} nonempty (y free)?
// Writes a feasible point when one exists.
bool lp_feasible(const RatMatrix& a, const RatVector& b, RatVector* point = nullptr);

}  // namespace bfc
