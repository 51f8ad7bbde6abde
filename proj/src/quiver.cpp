#include "tropmod/quiver.hpp"

#include <algorithm>
#include <deque>

namespace tropmod {

namespace {

void require_group(const QuiverPresentation& q)
{
    if (!q.pair.is_group()) throw InvalidInput("operation requires a group pair; use the family operations");
}

// Exhaustive search for a positive simple cycle; backs up Bellman-Ford.
std::optional<CycleWitness> positive_simple_cycle(const QuiverPresentation& q)
{
    std::optional<CycleWitness> found;
    std::vector<int> path_edges;
    std::vector<bool> on_path(q.n, false);
    auto dfs = [&](auto&& self, int start, int v, const Rational& w) -> void {
        if (found) return;
        for (std::size_t e = 0; e < q.edges.size() && !found; ++e) {
            const auto& edge = q.edges[e];
            if (edge.src != v || edge.dst < start) continue;
            Rational nw = w + q.group_weight(e);
            path_edges.push_back(static_cast<int>(e));
            if (edge.dst == start) {
                if (nw > 0) {
                    CycleWitness c{path_edges, {start}, nw};
                    for (int pe : path_edges) c.vertices.push_back(q.edges[pe].dst);
                    found = c;
                }
            } else if (!on_path[edge.dst]) {
                on_path[edge.dst] = true;
                self(self, start, edge.dst, nw);
                on_path[edge.dst] = false;
            }
            path_edges.pop_back();
        }
    };
    for (int s = 0; s < q.n && !found; ++s) {
        on_path[s] = true;
        dfs(dfs, s, s, Rational(0));
        on_path[s] = false;
    }
    return found;
}

} // namespace

void QuiverPresentation::validate() const
{
    if (n < 0) throw InvalidInput("negative vertex count");
    for (const auto& e : edges) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) throw InvalidInput("edge endpoint out of range");
        validate_carrier(pair, e.weight);
        if (e.src == e.dst && pair_is_integer(pair, e.weight))
            throw InvalidInput("trivial loop at vertex " + std::to_string(e.src) + " (weight lies in A+)");
    }
}

QuiverPresentation group_quiver(int n, const std::vector<std::tuple<int, int, Rational>>& edges, GroupTag tag)
{
    QuiverPresentation q{MonoidPairSpec::group_pair(tag), n, {}};
    for (const auto& [s, d, w] : edges) q.edges.push_back({s, d, w});
    q.validate();
    return q;
}

DegenerateQuiver::DegenerateQuiver(CycleWitness c)
    : Error("degenerate quiver: cycle of weight " + to_string(c.weight) + " > 0"), cycle_(std::move(c))
{
}

NondegeneracyResult is_nondegenerate(const QuiverPresentation& q)
{
    require_group(q);
    q.validate();
    // Longest-path Bellman-Ford from a virtual source joined to every vertex.
    std::vector<Rational> dist(q.n, Rational(0));
    std::vector<int> pred(q.n, -1);
    int last = -1;
    for (int round = 0; round < q.n; ++round) {
        last = -1;
        for (std::size_t e = 0; e < q.edges.size(); ++e) {
            const auto& edge = q.edges[e];
            Rational cand = dist[edge.src] + q.group_weight(e);
            if (cand > dist[edge.dst]) {
                dist[edge.dst] = cand;
                pred[edge.dst] = static_cast<int>(e);
                last = edge.dst;
            }
        }
        if (last < 0) return {};
    }
    if (last < 0) return {};
    int v = last;
    for (int k = 0; k < q.n; ++k) v = q.edges[pred[v]].src;
    CycleWitness c;
    int u = v;
    do {
        int e = pred[u];
        c.edges.push_back(e);
        c.weight += q.group_weight(e);
        u = q.edges[e].src;
    } while (u != v);
    std::reverse(c.edges.begin(), c.edges.end());
    c.vertices.push_back(v);
    for (int e : c.edges) c.vertices.push_back(q.edges[e].dst);
    if (c.weight <= 0) {
        auto alt = positive_simple_cycle(q);
        if (!alt) throw std::logic_error("Bellman-Ford reported a positive cycle that does not exist");
        c = *alt;
    }
    return {false, std::move(c)};
}

ClosureMatrix kleene_closure(const QuiverPresentation& q)
{
    auto nd = is_nondegenerate(q);
    if (!nd) throw DegenerateQuiver(*nd.witness);
    ClosureMatrix m(q.n, std::nullopt);
    MaxPlus alg;
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        const auto& edge = q.edges[e];
        m(edge.src, edge.dst) = alg.join(m(edge.src, edge.dst), q.group_weight(e));
    }
    close_in_place(alg, m);
    return m;
}

std::vector<int> realizing_path(const QuiverPresentation& q, const ClosureMatrix& closure, int i, int j)
{
    if (i == j) return {};
    if (!closure(i, j)) throw InvalidInput("no path between the requested vertices");
    // BFS along edges that stay tight for target j; any such path telescopes
    // to closure(i, j).
    std::vector<int> via(q.n, -1);
    std::vector<bool> seen(q.n, false);
    std::deque<int> queue{i};
    seen[i] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == j) break;
        for (std::size_t e = 0; e < q.edges.size(); ++e) {
            const auto& edge = q.edges[e];
            if (edge.src != u || seen[edge.dst] || !closure(edge.dst, j)) continue;
            if (q.group_weight(e) + *closure(edge.dst, j) != *closure(u, j)) continue;
            seen[edge.dst] = true;
            via[edge.dst] = static_cast<int>(e);
            queue.push_back(edge.dst);
        }
    }
    if (!seen[j]) throw std::logic_error("closure entry is not realized by any path");
    std::vector<int> path;
    for (int v = j; v != i; v = q.edges[via[v]].src) path.push_back(via[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

bool leq_elements(const ClosureMatrix& c, const Generator& f, const Generator& g)
{
    const auto& w = c(f.vertex, g.vertex);
    return w && f.coef - g.coef <= *w;
}

namespace {

// Smallest vertex in the tight class of v.
int class_rep(const ClosureMatrix& c, int v)
{
    for (int r = 0; r < v; ++r)
        if (c(r, v) && c(v, r) && *c(r, v) + *c(v, r) == 0) return r;
    return v;
}

} // namespace

ModuleElement::ModuleElement(const ClosureMatrix& c, std::vector<Generator> gens)
{
    for (auto& g : gens) {
        if (g.vertex < 0 || g.vertex >= c.size()) throw InvalidInput("generator vertex out of range");
        int r = class_rep(c, g.vertex);
        if (r != g.vertex) g = {g.coef + *c(r, g.vertex), r};
    }
    std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
        return a.vertex != b.vertex ? a.vertex < b.vertex : a.coef > b.coef;
    });
    for (const auto& g : gens) {
        bool dominated = std::any_of(gens_.begin(), gens_.end(), [&](const Generator& h) { return leq_elements(c, g, h); });
        if (dominated) continue;
        std::erase_if(gens_, [&](const Generator& h) { return leq_elements(c, h, g); });
        gens_.push_back(g);
    }
    std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
        return a.vertex != b.vertex ? a.vertex < b.vertex : a.coef < b.coef;
    });
}

bool ideal_leq(const ClosureMatrix& c, const ModuleElement& f, const ModuleElement& g)
{
    return std::all_of(f.generators().begin(), f.generators().end(), [&](const Generator& a) {
        return std::any_of(g.generators().begin(), g.generators().end(),
                           [&](const Generator& b) { return leq_elements(c, a, b); });
    });
}

ModuleElement ideal_join(const ClosureMatrix& c, const ModuleElement& f, const ModuleElement& g)
{
    auto gens = f.generators();
    gens.insert(gens.end(), g.generators().begin(), g.generators().end());
    return ModuleElement(c, std::move(gens));
}

ModuleElement ideal_shift(const ClosureMatrix& c, const ModuleElement& f, const Rational& by)
{
    auto gens = f.generators();
    for (auto& g : gens) g.coef += by;
    return ModuleElement(c, std::move(gens));
}

QuiverPresentation canonical_quiver(const ClosureMatrix& c, GroupTag tag)
{
    QuiverPresentation q{MonoidPairSpec::group_pair(tag), c.size(), {}};
    for (auto& e : reduce_edges(MaxPlus{}, c)) q.edges.push_back({e.src, e.dst, *e.weight});
    return q;
}

QuiverPresentation order_dual(const QuiverPresentation& q)
{
    auto nd = is_nondegenerate(q);
    if (!nd) throw DegenerateQuiver(*nd.witness);
    QuiverPresentation d{q.pair, q.n, {}};
    for (const auto& e : q.edges) d.edges.push_back({e.dst, e.src, e.weight});
    return d;
}

GroupProjectivity is_projective_group_pomod(const QuiverPresentation& q)
{
    GroupProjectivity r;
    auto nd = is_nondegenerate(q);
    if (!nd) {
        r.cycle = nd.witness;
        return r;
    }
    r.closure = kleene_closure(q);
    r.canonical = canonical_quiver(*r.closure, q.pair.group);
    r.projective = true;
    return r;
}

HomCheck check_module_hom(const QuiverPresentation& source, const QuiverPresentation& target,
                          const std::vector<std::vector<Generator>>& assignment)
{
    require_group(source);
    require_group(target);
    if (!(source.pair.group == target.pair.group)) throw InvalidInput("quivers are over different groups");
    if (static_cast<int>(assignment.size()) != source.n) throw InvalidInput("assignment must cover every source vertex");
    auto src_nd = is_nondegenerate(source);
    if (!src_nd) throw DegenerateQuiver(*src_nd.witness);
    const auto c = kleene_closure(target);
    std::vector<ModuleElement> images;
    for (const auto& gens : assignment) images.emplace_back(c, gens);
    for (std::size_t e = 0; e < source.edges.size(); ++e) {
        const auto& edge = source.edges[e];
        auto lhs = ideal_shift(c, images[edge.src], source.group_weight(e));
        if (!ideal_leq(c, lhs, images[edge.dst])) return {false, static_cast<int>(e)};
    }
    return {};
}

} // namespace tropmod
