#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "tropmod/errors.hpp"
#include "tropmod/monoid_pair.hpp"
#include "tropmod/path_algebra.hpp"

namespace tropmod {

/// Edge (src -> dst, w) imposes w + x_src <= x_dst.
struct QuiverEdge {
    int src = 0;
    int dst = 0;
    CarrierElement weight;
};

/// A partial order on the free module with basis x_0..x_{n-1} over a monoid
/// pair, presented by weighted edges. Parallel edges are allowed.
struct QuiverPresentation {
    MonoidPairSpec pair;
    int n = 0;
    std::vector<QuiverEdge> edges;

    /// Throws InvalidInput on bad indices, ill-formed weights, or trivial
    /// loops (a self-loop whose weight lies in A+).
    void validate() const;
    Rational group_weight(std::size_t edge) const { return std::get<Rational>(edges.at(edge).weight); }
};

/// Convenience builder for group-pair quivers.
QuiverPresentation group_quiver(int n, const std::vector<std::tuple<int, int, Rational>>& edges,
                                GroupTag tag = GroupTag::integers());

/// W*(i, j): the largest total weight of a path i -> j, or nullopt when there
/// is no path. The diagonal holds 0 (the empty path).
using ClosureMatrix = SquareMatrix<Weight>;

struct CycleWitness {
    std::vector<int> edges;    // edge indices in traversal order
    std::vector<int> vertices; // closed walk, first == last
    Rational weight;
};

/// Raised by kleene_closure when some cycle has positive weight.
class DegenerateQuiver : public Error {
public:
    explicit DegenerateQuiver(CycleWitness c);
    const CycleWitness& cycle() const { return cycle_; }

private:
    CycleWitness cycle_;
};

struct NondegeneracyResult {
    bool nondegenerate = true;
    std::optional<CycleWitness> witness;
    explicit operator bool() const { return nondegenerate; }
};

/// Requires a group pair. Finds a positive-weight simple cycle if one exists.
NondegeneracyResult is_nondegenerate(const QuiverPresentation& q);

/// Requires a group pair; throws DegenerateQuiver on a positive cycle.
ClosureMatrix kleene_closure(const QuiverPresentation& q);

/// Edge indices of a path realizing closure(i, j); empty for i == j.
std::vector<int> realizing_path(const QuiverPresentation& q, const ClosureMatrix& closure, int i, int j);

/// The element coef * x_vertex.
struct Generator {
    Rational coef;
    int vertex = 0;

    bool operator==(const Generator&) const = default;
};

/// coef_f * x_i <= coef_g * x_j in the presented order.
bool leq_elements(const ClosureMatrix& c, const Generator& f, const Generator& g);

/// A finitely generated lower submodule, kept as the antichain of its
/// maximal generators (sorted by vertex, then coefficient).
class ModuleElement {
public:
    ModuleElement() = default;
    /// Drops dominated generators.
    ModuleElement(const ClosureMatrix& c, std::vector<Generator> gens);

    const std::vector<Generator>& generators() const { return gens_; }
    bool operator==(const ModuleElement&) const = default;

private:
    std::vector<Generator> gens_;
};

bool ideal_leq(const ClosureMatrix& c, const ModuleElement& f, const ModuleElement& g);
ModuleElement ideal_join(const ClosureMatrix& c, const ModuleElement& f, const ModuleElement& g);
/// Action of a group element: every coefficient shifted by `by`.
ModuleElement ideal_shift(const ClosureMatrix& c, const ModuleElement& f, const Rational& by);

/// Transitive reduction of a closure; re-closing it gives the same closure.
QuiverPresentation canonical_quiver(const ClosureMatrix& c, GroupTag tag = GroupTag::integers());

/// Every edge reversed with its weight unchanged. The closure of the dual is
/// the transpose of the closure. Throws DegenerateQuiver on degenerate input.
QuiverPresentation order_dual(const QuiverPresentation& q);

/// Projectivity over a group pair: non-degeneracy is the only condition
/// (lower finiteness is automatic).
struct GroupProjectivity {
    bool projective = false;
    std::optional<ClosureMatrix> closure;
    std::optional<QuiverPresentation> canonical;
    std::optional<CycleWitness> cycle;
};

GroupProjectivity is_projective_group_pomod(const QuiverPresentation& q);

/// Each edge (i -> j, w) of `source` must satisfy w * assignment[i] <=
/// assignment[j] in the order presented by `target`.
struct HomCheck {
    bool ok = true;
    int failing_edge = -1;
    explicit operator bool() const { return ok; }
};

HomCheck check_module_hom(const QuiverPresentation& source, const QuiverPresentation& target,
                          const std::vector<std::vector<Generator>>& assignment);

} // namespace tropmod
