#pragma once

#include <optional>
#include <vector>

#include "tropmod/rational.hpp"

namespace tropmod {

/// coef . x < rhs when strict, coef . x <= rhs otherwise.
struct LinearConstraint {
    Point coef;
    Rational rhs;
    bool strict = false;
};

/// Exact feasibility over Q by Fourier-Motzkin elimination. Returns a
/// witness point satisfying every constraint, or nullopt if none exists.
std::optional<Point> find_point(int dim, std::vector<LinearConstraint> constraints);

} // namespace tropmod
