#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tropmod/cpa.hpp"
#include "tropmod/quiver.hpp"
#include "tropmod/weight_polyhedron.hpp"

namespace tropmod {

/// Bound on the number of simple paths or cycles a family operation may walk.
inline constexpr std::size_t kDefaultPathCap = 200000;

struct FamilyEdge {
    int src = 0;
    int dst = 0;
    AffineFunction weight;
};

/// A convex family of weight polyhedra over a base polyhedron, presented by
/// a quiver with affine-function weights over an Affine or BoundedAffine pair.
struct FamilyPresentation {
    MonoidPairSpec pair;
    int n = 0;
    std::vector<FamilyEdge> edges;

    const PolytopePtr& base() const { return pair.base; }
    int dim() const { return pair.dim(); }
    void validate() const;

    static FamilyPresentation from_quiver(const QuiverPresentation& q);
    QuiverPresentation to_quiver() const;
};

/// The CPA semiring as a path algebra: join is max, concatenation is sum,
/// bottom stands for "no path".
struct CpaAlgebra {
    using value_type = CPAFunction;
    PolytopePtr domain;

    value_type none() const { return CPAFunction::bottom(domain); }
    value_type unit() const { return CPAFunction::constant(domain, 0); }
    bool is_none(const value_type& a) const { return a.is_bottom(); }
    value_type join(const value_type& a, const value_type& b) const { return cpa_join(a, b); }
    value_type concat(const value_type& a, const value_type& b) const { return cpa_add(a, b); }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
};

/// W*(i, j) as a canonical CPA function; bottom means no path.
using FamilyClosure = SquareMatrix<CPAFunction>;

struct FamilyCycle {
    std::vector<int> edges;
    std::vector<int> vertices;
    AffineFunction weight;
    Point point;    // base point where the cycle weight is positive
    Rational value; // weight(point) > 0
};

class DegenerateFamily : public Error {
public:
    explicit DegenerateFamily(FamilyCycle c);
    const FamilyCycle& cycle() const { return cycle_; }

private:
    FamilyCycle cycle_;
};

/// Calls visit(edge indices, total weight) for every simple path src -> dst
/// (the empty path when src == dst). Stops early when visit returns false.
void for_each_simple_path(const FamilyPresentation& fam, int src, int dst,
                          const std::function<bool(const std::vector<int>&, const AffineFunction&)>& visit,
                          std::size_t cap = kDefaultPathCap);

/// A simple cycle whose weight is positive somewhere on the base.
std::optional<FamilyCycle> find_degenerate_cycle(const FamilyPresentation& fam, std::size_t cap = kDefaultPathCap);

/// Throws DegenerateFamily when some cycle is positive somewhere.
FamilyClosure family_closure(const FamilyPresentation& fam);

/// A simple path src -> dst whose weight agrees with `piece` on the base.
std::optional<std::vector<int>> path_for_piece(const FamilyPresentation& fam, int src, int dst,
                                               const AffineFunction& piece);

struct AffineGenerator {
    AffineFunction coef;
    int vertex = 0;
};

/// Some single path i -> j has weight w with f.coef - g.coef <= w on the base.
bool formal_leq(const FamilyPresentation& fam, const AffineGenerator& f, const AffineGenerator& g);

/// f.coef - g.coef <= W*(i, j) pointwise; the witness is a base point where
/// it fails.
LeqResult leq_normalized(const FamilyClosure& closure, const AffineGenerator& f, const AffineGenerator& g);
LeqResult leq_normalized(const FamilyPresentation& fam, const AffineGenerator& f, const AffineGenerator& g);

/// The scalar quiver obtained by evaluating every weight at q. Self-loops
/// that become trivial at q are dropped.
QuiverPresentation fiber_quiver(const FamilyPresentation& fam, const Point& q);
WeightPolyhedron fiber(const FamilyPresentation& fam, const Point& q);

/// Entrywise evaluation of a family closure.
ClosureMatrix evaluate_closure(const FamilyClosure& closure, const Point& q);

struct UnboundedWeight {
    int src = 0;
    int dst = 0;
    AffineFunction piece;
    IntVector ray;
    std::vector<int> path;
};

struct FamilyProjectivity {
    enum class Kind { Projective, Degenerate, NotLowerFinite };

    Kind kind = Kind::Projective;
    std::optional<FamilyClosure> closure;
    std::vector<ReducedEdge<CPAFunction>> canonical;
    std::optional<FamilyCycle> cycle;
    std::optional<UnboundedWeight> unbounded;

    bool projective() const { return kind == Kind::Projective; }
};

FamilyProjectivity is_projective_family(const FamilyPresentation& fam);

/// Edge (i -> j, w) becomes (i -> j, w + shift_i - shift_j).
FamilyPresentation change_of_basis(const FamilyPresentation& fam, const std::vector<AffineFunction>& shifts);

struct VerticalHomCheck {
    bool ok = true;
    int failing_edge = -1;
    int failing_generator = -1; // index into the shifted source image
    std::optional<Point> witness; // base point where the relation fails
    explicit operator bool() const { return ok; }
};

/// Family version of check_module_hom, comparing in the normalized order.
VerticalHomCheck vertical_hom_check(const FamilyPresentation& source, const FamilyPresentation& target,
                                    const std::vector<std::vector<AffineGenerator>>& assignment);

/// Projectivity of a quiver-presented po-module over any shipped pair:
/// group pairs go through the max-plus closure, affine pairs through the
/// family closure.
struct PomodVerdict {
    enum class Kind { Projective, Degenerate, NotLowerFinite };

    Kind kind = Kind::Projective;
    std::optional<GroupProjectivity> group;
    std::optional<FamilyProjectivity> family;
};

PomodVerdict is_projective_pomod(const QuiverPresentation& q);

} // namespace tropmod
