#pragma once

#include <optional>
#include <vector>

#include "tropmod/quiver.hpp"
#include "tropmod/semilattice.hpp"

namespace tropmod {

/// A GL weight polyhedron {p : p_i - p_j <= c(i, j)} stored as a tight
/// difference-bound matrix; nullopt entries are unbounded. Tightness makes
/// structural equality coincide with equality of point sets (for nonempty
/// polyhedra).
class WeightPolyhedron {
public:
    WeightPolyhedron() = default;

    /// Tightens an arbitrary bound matrix and records emptiness.
    static WeightPolyhedron from_bounds(SquareMatrix<Weight> bounds);

    int size() const { return dbm_.size(); }
    const Weight& bound(int i, int j) const { return dbm_(i, j); }
    const SquareMatrix<Weight>& dbm() const { return dbm_; }
    bool nonempty() const { return nonempty_; }
    bool contains(const Point& p) const;

    bool operator==(const WeightPolyhedron&) const = default;

private:
    friend WeightPolyhedron polyhedron_of(const ClosureMatrix& c);
    SquareMatrix<Weight> dbm_;
    bool nonempty_ = true;
};

/// c(i, j) = -W*(i, j). Throws InvalidInput if the closure is degenerate.
WeightPolyhedron polyhedron_of(const ClosureMatrix& c);

/// W*(i, j) = -c(i, j). Throws InvalidInput on an empty polyhedron.
ClosureMatrix pomod_of(const WeightPolyhedron& p);

/// A monotone functional (a point of the polyhedron) with value 0 on g and
/// positive value on f, or nullopt when f <= g.
std::optional<Point> separate(const ClosureMatrix& c, const Generator& f, const Generator& g);

/// Checks p_l >= W*(k, l) + p_k for every finite closure entry.
bool is_monotone_functional(const ClosureMatrix& c, const Point& p);

/// Coordinates in H or -inf (nullopt).
using ExtendedPoint = std::vector<Weight>;

bool extended_membership(const WeightPolyhedron& p, const ExtendedPoint& x, const ClosureMatrix& c);

/// Supports of the strata of the extended polyhedron: the subsets closed
/// under W*-reachability, as masks, in increasing numeric order.
std::vector<Mask> strata(const ClosureMatrix& c, int cap = 12);

/// Point map q_k = p_{index_map[k]} + translation[k] from source to target.
struct AffineWeightMap {
    std::vector<int> index_map;
    std::vector<Rational> translation;
};

bool check_affine_map(const WeightPolyhedron& source, const WeightPolyhedron& target, const AffineWeightMap& m);

/// The diagonal quotient, normalized by p_reference = 0.
struct SLPolyhedron {
    WeightPolyhedron polyhedron;
    int reference = 0;
    /// Bounds (lower, upper) for each coordinate other than the reference,
    /// in index order; nullopt is unbounded.
    std::vector<std::pair<Weight, Weight>> coordinate_bounds;
    bool laterally_compact = false;
};

SLPolyhedron project_diagonal(const WeightPolyhedron& p);

} // namespace tropmod
