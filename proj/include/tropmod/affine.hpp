#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>

#include "tropmod/polytope.hpp"
#include "tropmod/rational.hpp"

namespace tropmod {

/// x |-> <slope, x> + constant with integral slope.
struct AffineFunction {
    IntVector slope;
    Rational constant;

    static AffineFunction constant_fn(int dim, const Rational& c) { return {IntVector(dim, 0), c}; }
    /// The coordinate function X_k (0-based).
    static AffineFunction coordinate(int dim, int k);

    int dim() const { return static_cast<int>(slope.size()); }
    Rational operator()(const Point& x) const { return dot(slope, x) + constant; }
    bool is_constant() const;

    AffineFunction operator-() const;
    friend AffineFunction operator+(const AffineFunction& a, const AffineFunction& b);
    friend AffineFunction operator-(const AffineFunction& a, const AffineFunction& b);
    friend AffineFunction operator+(const AffineFunction& a, const Rational& c);

    bool operator==(const AffineFunction& o) const { return slope == o.slope && constant == o.constant; }
    /// Lexicographic on (slope, constant); only used for deterministic ordering.
    bool operator<(const AffineFunction& o) const;
};

/// Renders e.g. "-X", "2*X1 - X2 + 1/2".
std::string to_string(const AffineFunction& f);

struct BoundedMax {
    Rational value;
    Point vertex;
};

struct UnboundedRay {
    IntVector ray;
};

using AffineMax = std::variant<BoundedMax, UnboundedRay>;

/// Exact supremum of f over the polytope: a maximizing vertex, or a recession
/// ray along which f increases.
AffineMax affine_max_on(const RationalPolytope& domain, const AffineFunction& f);

/// A point of the domain where f > 0, if one exists.
std::optional<Point> positive_point(const RationalPolytope& domain, const AffineFunction& f);

} // namespace tropmod
