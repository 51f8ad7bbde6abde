#pragma once

#include <memory>
#include <vector>

#include "tropmod/errors.hpp"
#include "tropmod/rational.hpp"

namespace tropmod {

/// The halfspace <normal, x> <= rhs.
struct Halfspace {
    IntVector normal;
    Rational rhs;

    bool operator==(const Halfspace&) const = default;
};

/// Largest supported ambient dimension for base polyhedra.
inline constexpr int kMaxPolytopeDim = 4;

/// A nonempty, strongly convex rational polyhedron stored in both halfspace
/// and vertex/ray form. The vertex and ray lists are computed once, exactly,
/// when the object is built and never change afterwards.
class RationalPolytope {
public:
    /// Throws InvalidInput if the system is empty, has a lineality space,
    /// or exceeds kMaxPolytopeDim.
    static RationalPolytope from_halfspaces(int dim, std::vector<Halfspace> halfspaces);

    int dim() const { return dim_; }
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    /// Extreme rays of the recession cone, as primitive integer vectors.
    const std::vector<IntVector>& rays() const { return rays_; }

    bool bounded() const { return rays_.empty(); }
    bool contains(const Point& q) const;
    bool has_recession_ray(const IntVector& r) const;

    bool operator==(const RationalPolytope& o) const
    {
        return dim_ == o.dim_ && halfspaces_ == o.halfspaces_;
    }

private:
    int dim_ = 0;
    std::vector<Halfspace> halfspaces_;
    std::vector<Point> vertices_;
    std::vector<IntVector> rays_;
};

using PolytopePtr = std::shared_ptr<const RationalPolytope>;

PolytopePtr make_polytope(int dim, std::vector<Halfspace> halfspaces);
/// [lo, hi] on the line.
PolytopePtr interval(const Rational& lo, const Rational& hi);
/// (-inf, hi] on the line.
PolytopePtr lower_halfline(const Rational& hi);
/// Axis-aligned box given per-coordinate bounds.
PolytopePtr box(const std::vector<std::pair<Rational, Rational>>& bounds);

bool same_domain(const PolytopePtr& a, const PolytopePtr& b);

} // namespace tropmod
