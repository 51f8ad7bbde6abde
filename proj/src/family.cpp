#include "tropmod/family.hpp"

#include <algorithm>

namespace tropmod {

namespace {

AffineFunction zero_fn(int dim) { return AffineFunction::constant_fn(dim, 0); }

CPAFunction as_cpa(const PolytopePtr& base, const AffineFunction& f) { return CPAFunction::affine(base, f); }

void require_same_base(const FamilyPresentation& a, const FamilyPresentation& b)
{
    if (!(*a.base() == *b.base())) throw InvalidInput("families must share the base polyhedron");
}

} // namespace

void FamilyPresentation::validate() const
{
    if (pair.is_group()) throw InvalidInput("a family needs an affine or bounded affine pair");
    to_quiver().validate();
}

FamilyPresentation FamilyPresentation::from_quiver(const QuiverPresentation& q)
{
    if (q.pair.is_group()) throw InvalidInput("group quivers are not families");
    FamilyPresentation fam{q.pair, q.n, {}};
    for (const auto& e : q.edges) {
        const auto* f = std::get_if<AffineFunction>(&e.weight);
        if (!f) throw InvalidInput("family edge weights must be affine functions");
        fam.edges.push_back({e.src, e.dst, *f});
    }
    return fam;
}

QuiverPresentation FamilyPresentation::to_quiver() const
{
    QuiverPresentation q{pair, n, {}};
    for (const auto& e : edges) q.edges.push_back({e.src, e.dst, e.weight});
    return q;
}

DegenerateFamily::DegenerateFamily(FamilyCycle c)
    : Error("degenerate family: cycle weight " + to_string(c.weight) + " is positive somewhere on the base"),
      cycle_(std::move(c))
{
}

void for_each_simple_path(const FamilyPresentation& fam, int src, int dst,
                          const std::function<bool(const std::vector<int>&, const AffineFunction&)>& visit,
                          std::size_t cap)
{
    if (src < 0 || src >= fam.n || dst < 0 || dst >= fam.n) throw InvalidInput("vertex out of range");
    std::vector<int> path;
    std::vector<bool> seen(fam.n, false);
    std::size_t visited = 0;
    bool stop = false;
    auto dfs = [&](auto&& self, int v, const AffineFunction& w) -> void {
        if (v == dst) {
            if (++visited > cap) throw CapExceeded("too many simple paths (cap " + std::to_string(cap) + ")");
            if (!visit(path, w)) stop = true;
            return;
        }
        for (std::size_t e = 0; e < fam.edges.size() && !stop; ++e) {
            const auto& edge = fam.edges[e];
            if (edge.src != v || seen[edge.dst]) continue;
            seen[edge.dst] = true;
            path.push_back(static_cast<int>(e));
            self(self, edge.dst, w + edge.weight);
            path.pop_back();
            seen[edge.dst] = false;
        }
    };
    seen[src] = true;
    dfs(dfs, src, zero_fn(fam.dim()));
}

std::optional<FamilyCycle> find_degenerate_cycle(const FamilyPresentation& fam, std::size_t cap)
{
    std::optional<FamilyCycle> found;
    std::vector<int> path;
    std::vector<bool> on_path(fam.n, false);
    std::size_t visited = 0;
    auto dfs = [&](auto&& self, int start, int v, const AffineFunction& w) -> void {
        for (std::size_t e = 0; e < fam.edges.size() && !found; ++e) {
            const auto& edge = fam.edges[e];
            if (edge.src != v || edge.dst < start) continue;
            AffineFunction nw = w + edge.weight;
            path.push_back(static_cast<int>(e));
            if (edge.dst == start) {
                if (++visited > cap) throw CapExceeded("too many simple cycles (cap " + std::to_string(cap) + ")");
                if (auto q = positive_point(*fam.base(), nw)) {
                    FamilyCycle c{path, {start}, nw, *q, nw(*q)};
                    for (int pe : path) c.vertices.push_back(fam.edges[pe].dst);
                    found = std::move(c);
                }
            } else if (!on_path[edge.dst]) {
                on_path[edge.dst] = true;
                self(self, start, edge.dst, nw);
                on_path[edge.dst] = false;
            }
            path.pop_back();
        }
    };
    for (int s = 0; s < fam.n && !found; ++s) {
        on_path[s] = true;
        dfs(dfs, s, s, zero_fn(fam.dim()));
        on_path[s] = false;
    }
    return found;
}

FamilyClosure family_closure(const FamilyPresentation& fam)
{
    fam.validate();
    if (auto c = find_degenerate_cycle(fam)) throw DegenerateFamily(*c);
    CpaAlgebra alg{fam.base()};
    FamilyClosure m(fam.n, alg.none());
    for (const auto& e : fam.edges) m(e.src, e.dst) = alg.join(m(e.src, e.dst), as_cpa(fam.base(), e.weight));
    close_in_place(alg, m);
    return m;
}

std::optional<std::vector<int>> path_for_piece(const FamilyPresentation& fam, int src, int dst,
                                               const AffineFunction& piece)
{
    const auto target = restriction_key(*fam.base(), piece);
    std::optional<std::vector<int>> out;
    for_each_simple_path(fam, src, dst, [&](const std::vector<int>& p, const AffineFunction& w) {
        if (restriction_key(*fam.base(), w) == target) {
            out = p;
            return false;
        }
        return true;
    });
    return out;
}

bool formal_leq(const FamilyPresentation& fam, const AffineGenerator& f, const AffineGenerator& g)
{
    const AffineFunction diff = f.coef - g.coef;
    bool holds = false;
    for_each_simple_path(fam, f.vertex, g.vertex, [&](const std::vector<int>&, const AffineFunction& w) {
        if (!positive_point(*fam.base(), diff - w)) holds = true;
        return !holds;
    });
    return holds;
}

LeqResult leq_normalized(const FamilyClosure& closure, const AffineGenerator& f, const AffineGenerator& g)
{
    const auto& w = closure(f.vertex, g.vertex);
    const AffineFunction diff = f.coef - g.coef;
    if (w.is_bottom()) {
        // No path: never comparable. Any base point is a witness.
        const auto& dom = *w.domain();
        return {false, dom.vertices().empty() ? std::optional<Point>{} : std::optional<Point>{dom.vertices()[0]}};
    }
    return cpa_leq(as_cpa(w.domain(), diff), w);
}

LeqResult leq_normalized(const FamilyPresentation& fam, const AffineGenerator& f, const AffineGenerator& g)
{
    return leq_normalized(family_closure(fam), f, g);
}

QuiverPresentation fiber_quiver(const FamilyPresentation& fam, const Point& q)
{
    if (!fam.base()->contains(q)) throw InvalidInput("fiber point is outside the base");
    QuiverPresentation out{MonoidPairSpec::group_pair(GroupTag::rationals()), fam.n, {}};
    for (const auto& e : fam.edges) {
        Rational v = e.weight(q);
        if (e.src == e.dst && v <= 0) continue;
        out.edges.push_back({e.src, e.dst, v});
    }
    return out;
}

WeightPolyhedron fiber(const FamilyPresentation& fam, const Point& q)
{
    return polyhedron_of(kleene_closure(fiber_quiver(fam, q)));
}

ClosureMatrix evaluate_closure(const FamilyClosure& closure, const Point& q)
{
    ClosureMatrix out(closure.size(), std::nullopt);
    for (int i = 0; i < closure.size(); ++i)
        for (int j = 0; j < closure.size(); ++j) out(i, j) = cpa_eval(closure(i, j), q);
    return out;
}

FamilyProjectivity is_projective_family(const FamilyPresentation& fam)
{
    fam.validate();
    FamilyProjectivity out;
    if (auto c = find_degenerate_cycle(fam)) {
        out.kind = FamilyProjectivity::Kind::Degenerate;
        out.cycle = std::move(c);
        return out;
    }
    FamilyClosure w = family_closure(fam);
    if (fam.pair.kind == MonoidPairSpec::Kind::BoundedAffine) {
        for (int i = 0; i < fam.n; ++i)
            for (int j = 0; j < fam.n; ++j)
                for (const auto& piece : w(i, j).pieces())
                    for (const auto& ray : fam.pair.boundary_rays) {
                        if (dot(piece.slope, ray) <= 0) continue;
                        auto path = path_for_piece(fam, i, j, piece);
                        if (!path) throw std::logic_error("closure piece without a realizing path");
                        out.kind = FamilyProjectivity::Kind::NotLowerFinite;
                        out.unbounded = UnboundedWeight{i, j, piece, ray, *path};
                        out.closure = std::move(w);
                        return out;
                    }
    }
    out.canonical = reduce_edges(CpaAlgebra{fam.base()}, w);
    out.closure = std::move(w);
    return out;
}

FamilyPresentation change_of_basis(const FamilyPresentation& fam, const std::vector<AffineFunction>& shifts)
{
    if (static_cast<int>(shifts.size()) != fam.n) throw InvalidInput("need one shift per vertex");
    for (const auto& s : shifts) validate_carrier(fam.pair, s);
    FamilyPresentation out = fam;
    for (auto& e : out.edges) e.weight = e.weight + shifts[e.src] - shifts[e.dst];
    return out;
}

VerticalHomCheck vertical_hom_check(const FamilyPresentation& source, const FamilyPresentation& target,
                                    const std::vector<std::vector<AffineGenerator>>& assignment)
{
    source.validate();
    require_same_base(source, target);
    if (static_cast<int>(assignment.size()) != source.n) throw InvalidInput("need one image per source vertex");
    for (const auto& img : assignment)
        for (const auto& g : img) {
            if (g.vertex < 0 || g.vertex >= target.n) throw InvalidInput("image generator vertex out of range");
            validate_carrier(target.pair, g.coef);
        }
    const FamilyClosure w = family_closure(target);
    const auto& base = target.base();
    for (std::size_t e = 0; e < source.edges.size(); ++e) {
        const auto& edge = source.edges[e];
        for (std::size_t gi = 0; gi < assignment[edge.src].size(); ++gi) {
            const auto& g = assignment[edge.src][gi];
            // shifted generator (w + a) x_k must lie below the image of dst,
            // i.e. w + a <= max over (b, l) of b + W(k, l) on the base.
            CPAFunction bound = CPAFunction::bottom(base);
            for (const auto& h : assignment[edge.dst])
                if (!w(g.vertex, h.vertex).is_bottom())
                    bound = cpa_join(bound, cpa_add(w(g.vertex, h.vertex), as_cpa(base, h.coef)));
            auto r = cpa_leq(as_cpa(base, edge.weight + g.coef), bound);
            if (!r.holds) {
                std::optional<Point> witness = r.witness;
                if (!witness && !base->vertices().empty()) witness = base->vertices()[0];
                return {false, static_cast<int>(e), static_cast<int>(gi), witness};
            }
        }
    }
    return {};
}

PomodVerdict is_projective_pomod(const QuiverPresentation& q)
{
    PomodVerdict out;
    if (q.pair.is_group()) {
        auto g = is_projective_group_pomod(q);
        out.kind = g.projective ? PomodVerdict::Kind::Projective : PomodVerdict::Kind::Degenerate;
        out.group = std::move(g);
        return out;
    }
    auto f = is_projective_family(FamilyPresentation::from_quiver(q));
    switch (f.kind) {
    case FamilyProjectivity::Kind::Projective: out.kind = PomodVerdict::Kind::Projective; break;
    case FamilyProjectivity::Kind::Degenerate: out.kind = PomodVerdict::Kind::Degenerate; break;
    case FamilyProjectivity::Kind::NotLowerFinite: out.kind = PomodVerdict::Kind::NotLowerFinite; break;
    }
    out.family = std::move(f);
    return out;
}

} // namespace tropmod
