#include "tropmod/certificate.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

namespace tropmod {

namespace {

// ---------------------------------------------------------------- helpers

const std::set<std::string> kNegativeVerdicts = {"not_projective", "degenerate", "not_lower_finite", "not_hom",
                                                 "not_leq"};

std::string fnv1a_hex(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json path_json(const std::vector<int>& p) { return Json(p); }

std::vector<int> path_from_json(const Json& j, std::size_t edge_count)
{
    require_input(j.is_array(), "path must be an array of edge indices");
    std::vector<int> p;
    for (const auto& e : j) {
        auto v = int_from_json(e);
        require_input(v >= 0 && static_cast<std::size_t>(v) < edge_count, "path edge out of range");
        p.push_back(static_cast<int>(v));
    }
    return p;
}

template <class Edges>
bool chain_ok(const Edges& edges, const std::vector<int>& path, int src, int dst)
{
    int at = src;
    for (int e : path) {
        if (edges[e].src != at) return false;
        at = edges[e].dst;
    }
    return at == dst;
}

Rational group_path_weight(const QuiverPresentation& q, const std::vector<int>& path)
{
    Rational s = 0;
    for (int e : path) s += q.group_weight(e);
    return s;
}

AffineFunction family_path_weight(const FamilyPresentation& fam, const std::vector<int>& path)
{
    AffineFunction s = AffineFunction::constant_fn(fam.dim(), 0);
    for (int e : path) s = s + fam.edges[e].weight;
    return s;
}

bool same_on_base(const FamilyPresentation& fam, const AffineFunction& a, const AffineFunction& b)
{
    return restriction_key(*fam.base(), a) == restriction_key(*fam.base(), b);
}

void check_cap(int n, const RunOptions& opt)
{
    if (n > opt.cap_n)
        throw CapExceeded("instance has " + std::to_string(n) + " vertices; cap is " + std::to_string(opt.cap_n));
}

QuiverPresentation group_quiver_from(const Json& j, const RunOptions& opt)
{
    auto q = quiver_from_json(j);
    require_input(q.pair.is_group(), "this command expects a group-pair quiver");
    check_cap(q.n, opt);
    return q;
}

FamilyPresentation family_from(const Json& j, const RunOptions& opt)
{
    auto f = family_from_json(j);
    check_cap(f.n, opt);
    return f;
}

struct Outcome {
    std::string verdict;
    Json witness;
};

// ------------------------------------------------- group closure certificate

Json group_closure_cert(const QuiverPresentation& q, const ClosureMatrix& c)
{
    Json paths = Json::array();
    for (int i = 0; i < q.n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < q.n; ++j)
            row.push_back(c(i, j) ? path_json(realizing_path(q, c, i, j)) : Json(nullptr));
        paths.push_back(std::move(row));
    }
    Json out = closure_to_json(c);
    out["paths"] = std::move(paths);
    return out;
}

// Exact closure: every entry is a path weight, and the matrix dominates
// every edge and is closed under concatenation. The second half also rules
// out positive cycles, since each cycle weight is bounded by W(i, i) = 0.
std::optional<ClosureMatrix> check_group_closure_cert(const QuiverPresentation& q, const Json& cert)
{
    ClosureMatrix c = closure_from_json(cert);
    if (c.size() != q.n) return std::nullopt;
    const Json& paths = json_field(cert, "paths");
    if (!paths.is_array() || static_cast<int>(paths.size()) != q.n) return std::nullopt;
    for (int i = 0; i < q.n; ++i) {
        if (!paths[i].is_array() || static_cast<int>(paths[i].size()) != q.n) return std::nullopt;
        if (c(i, i) != Rational(0)) return std::nullopt;
        for (int j = 0; j < q.n; ++j) {
            const Json& p = paths[i][j];
            if (!c(i, j)) {
                if (!p.is_null()) return std::nullopt;
                continue;
            }
            auto path = path_from_json(p, q.edges.size());
            if (!chain_ok(q.edges, path, i, j) || group_path_weight(q, path) != *c(i, j)) return std::nullopt;
        }
    }
    for (std::size_t e = 0; e < q.edges.size(); ++e) {
        const auto& w = c(q.edges[e].src, q.edges[e].dst);
        if (!w || *w < q.group_weight(e)) return std::nullopt;
    }
    for (int i = 0; i < q.n; ++i)
        for (int k = 0; k < q.n; ++k) {
            if (!c(i, k)) continue;
            for (int j = 0; j < q.n; ++j) {
                if (!c(k, j)) continue;
                if (!c(i, j) || *c(i, j) < *c(i, k) + *c(k, j)) return std::nullopt;
            }
        }
    return c;
}

Json group_cycle_json(const CycleWitness& c)
{
    return Json{{"edges", c.edges}, {"vertices", c.vertices}, {"weight", to_json(c.weight)}};
}

bool check_group_cycle(const QuiverPresentation& q, const Json& j)
{
    auto edges = path_from_json(json_field(j, "edges"), q.edges.size());
    if (edges.empty()) return false;
    Rational w = rational_from_json(json_field(j, "weight"));
    auto verts = json_field(j, "vertices").get<std::vector<int>>();
    if (verts.size() != edges.size() + 1) return false;
    for (std::size_t t = 0; t < edges.size(); ++t)
        if (q.edges[edges[t]].src != verts[t] || q.edges[edges[t]].dst != verts[t + 1]) return false;
    return verts.front() == verts.back() && group_path_weight(q, edges) == w && w > 0;
}

// ------------------------------------------------ family closure certificate

Json family_closure_cert(const FamilyPresentation& fam, const FamilyClosure& w)
{
    Json paths = Json::array();
    for (int i = 0; i < fam.n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < fam.n; ++j) {
            Json per_piece = Json::array();
            for (const auto& piece : w(i, j).pieces()) {
                auto p = path_for_piece(fam, i, j, piece);
                if (!p) throw std::logic_error("closure piece without a realizing path");
                per_piece.push_back(path_json(*p));
            }
            row.push_back(std::move(per_piece));
        }
        paths.push_back(std::move(row));
    }
    Json out = closure_to_json(w);
    out["paths"] = std::move(paths);
    return out;
}

std::optional<FamilyClosure> check_family_closure_cert(const FamilyPresentation& fam, const Json& cert)
{
    const auto& base = fam.base();
    FamilyClosure w = family_closure_from_json(cert, base);
    if (w.size() != fam.n) return std::nullopt;
    const Json& paths = json_field(cert, "paths");
    if (!paths.is_array() || static_cast<int>(paths.size()) != fam.n) return std::nullopt;
    const CPAFunction zero = CPAFunction::constant(base, 0);
    for (int i = 0; i < fam.n; ++i) {
        if (!paths[i].is_array() || static_cast<int>(paths[i].size()) != fam.n) return std::nullopt;
        if (!(w(i, i) == zero)) return std::nullopt;
        for (int j = 0; j < fam.n; ++j) {
            const Json& pp = paths[i][j];
            if (!pp.is_array() || pp.size() != w(i, j).pieces().size()) return std::nullopt;
            for (std::size_t k = 0; k < pp.size(); ++k) {
                auto path = path_from_json(pp[k], fam.edges.size());
                if (!chain_ok(fam.edges, path, i, j)) return std::nullopt;
                if (!same_on_base(fam, family_path_weight(fam, path), w(i, j).pieces()[k])) return std::nullopt;
            }
        }
    }
    for (const auto& e : fam.edges)
        if (!cpa_leq(CPAFunction::affine(base, e.weight), w(e.src, e.dst))) return std::nullopt;
    for (int i = 0; i < fam.n; ++i)
        for (int k = 0; k < fam.n; ++k) {
            if (w(i, k).is_bottom()) continue;
            for (int j = 0; j < fam.n; ++j) {
                if (w(k, j).is_bottom()) continue;
                if (!cpa_leq(cpa_add(w(i, k), w(k, j)), w(i, j))) return std::nullopt;
            }
        }
    return w;
}

Json family_cycle_json(const FamilyCycle& c)
{
    return Json{{"edges", c.edges},           {"vertices", c.vertices}, {"weight", to_json(c.weight)},
                {"point", to_json(c.point)}, {"value", to_json(c.value)}};
}

bool check_family_cycle(const FamilyPresentation& fam, const Json& j)
{
    auto edges = path_from_json(json_field(j, "edges"), fam.edges.size());
    if (edges.empty()) return false;
    auto verts = json_field(j, "vertices").get<std::vector<int>>();
    if (verts.size() != edges.size() + 1 || verts.front() != verts.back()) return false;
    for (std::size_t t = 0; t < edges.size(); ++t)
        if (fam.edges[edges[t]].src != verts[t] || fam.edges[edges[t]].dst != verts[t + 1]) return false;
    AffineFunction w = affine_from_json(json_field(j, "weight"), fam.dim());
    Point q = point_from_json(json_field(j, "point"), fam.dim());
    Rational v = rational_from_json(json_field(j, "value"));
    return family_path_weight(fam, edges) == w && fam.base()->contains(q) && w(q) == v && v > 0;
}

// ------------------------------------------------------- projectivity checks

Outcome family_projectivity(const FamilyPresentation& fam)
{
    auto r = is_projective_family(fam);
    switch (r.kind) {
    case FamilyProjectivity::Kind::Degenerate:
        return {"degenerate", {{"cycle", family_cycle_json(*r.cycle)}}};
    case FamilyProjectivity::Kind::NotLowerFinite: {
        const auto& u = *r.unbounded;
        AffineFunction exact = family_path_weight(fam, u.path);
        return {"not_lower_finite",
                {{"weight", to_string(exact)},
                 {"piece", to_json(exact)},
                 {"ray", to_json(u.ray)},
                 {"src", u.src},
                 {"dst", u.dst},
                 {"path", path_json(u.path)}}};
    }
    case FamilyProjectivity::Kind::Projective: break;
    }
    Json canonical = Json::array();
    for (const auto& e : r.canonical) canonical.push_back({{"src", e.src}, {"dst", e.dst}, {"w", to_json(e.weight)}});
    return {"projective", {{"closure", family_closure_cert(fam, *r.closure)}, {"canonical", canonical}}};
}

bool check_family_projectivity(const FamilyPresentation& fam, const std::string& verdict, const Json& w)
{
    if (verdict == "degenerate") return check_family_cycle(fam, json_field(w, "cycle"));
    if (verdict == "not_lower_finite") {
        if (fam.pair.kind != MonoidPairSpec::Kind::BoundedAffine) return false;
        IntVector ray = int_vector_from_json(json_field(w, "ray"), fam.dim());
        if (std::find(fam.pair.boundary_rays.begin(), fam.pair.boundary_rays.end(), ray) ==
            fam.pair.boundary_rays.end())
            return false;
        int src = static_cast<int>(int_from_json(json_field(w, "src")));
        int dst = static_cast<int>(int_from_json(json_field(w, "dst")));
        if (src < 0 || src >= fam.n || dst < 0 || dst >= fam.n) return false;
        auto path = path_from_json(json_field(w, "path"), fam.edges.size());
        AffineFunction piece = affine_from_json(json_field(w, "piece"), fam.dim());
        return chain_ok(fam.edges, path, src, dst) && family_path_weight(fam, path) == piece &&
               json_field(w, "weight") == Json(to_string(piece)) && dot(piece.slope, ray) > 0;
    }
    if (verdict != "projective") return false;
    auto closure = check_family_closure_cert(fam, json_field(w, "closure"));
    if (!closure) return false;
    for (int i = 0; i < fam.n; ++i)
        for (int j = 0; j < fam.n; ++j)
            for (const auto& piece : (*closure)(i, j).pieces())
                if (!pair_in_carrier(fam.pair, piece)) return false;
    const Json& canonical = json_field(w, "canonical");
    if (!canonical.is_array()) return false;
    for (const auto& e : canonical) {
        int src = static_cast<int>(int_from_json(json_field(e, "src")));
        int dst = static_cast<int>(int_from_json(json_field(e, "dst")));
        if (src < 0 || src >= fam.n || dst < 0 || dst >= fam.n) return false;
        if (!(cpa_from_json(json_field(e, "w"), fam.base()) == (*closure)(src, dst))) return false;
    }
    return true;
}

Outcome group_projectivity(const QuiverPresentation& q)
{
    auto r = is_projective_group_pomod(q);
    if (!r.projective) return {"degenerate", {{"cycle", group_cycle_json(*r.cycle)}}};
    return {"projective", {{"closure", group_closure_cert(q, *r.closure)}, {"canonical", to_json(*r.canonical)}}};
}

bool check_group_projectivity(const QuiverPresentation& q, const std::string& verdict, const Json& w)
{
    if (verdict == "degenerate") return check_group_cycle(q, json_field(w, "cycle"));
    if (verdict != "projective") return false;
    auto c = check_group_closure_cert(q, json_field(w, "closure"));
    if (!c) return false;
    auto canonical = quiver_from_json(json_field(w, "canonical"));
    if (canonical.n != q.n || !canonical.pair.is_group()) return false;
    for (std::size_t e = 0; e < canonical.edges.size(); ++e) {
        const auto& entry = (*c)(canonical.edges[e].src, canonical.edges[e].dst);
        if (!entry || *entry != canonical.group_weight(e)) return false;
    }
    return true;
}

// --------------------------------------------------------------- commands

struct SemilatticeChecks {
    static Json lower_sets_json(const std::vector<Mask>& sets, int k)
    {
        Json out = Json::array();
        for (Mask m : sets) {
            Json s = Json::array();
            for (int i = 0; i < k; ++i)
                if (mask_has(m, i)) s.push_back(i);
            out.push_back(std::move(s));
        }
        return out;
    }

    static Mask mask_from_json(const Json& j, int k)
    {
        Mask m = 0;
        for (const auto& x : j) {
            auto v = int_from_json(x);
            require_input(v >= 0 && v < k, "lower set member out of range");
            m |= mask_bit(static_cast<int>(v));
        }
        return m;
    }
};

bool is_join_irreducible(const FinBModule& mu, int x)
{
    if (x == mu.bottom()) return false;
    int below = mu.bottom();
    for (int y = 0; y < mu.size(); ++y)
        if (y != x && mu.leq(y, x)) below = mu.join(below, y);
    return below != x;
}

Outcome run_classify_semilattice(const Request& req)
{
    FinBModule mu = module_from_json(req.payload);
    auto r = is_projective(mu);
    const int k = static_cast<int>(r.primitives.size());
    Json w{{"primitives", r.primitives}, {"primitive_order", r.primitive_order.relation()}};
    if (r.projective) {
        bool free = true;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                if (a != b && r.primitive_order.leq(a, b)) free = false;
        w["lower_sets"] = SemilatticeChecks::lower_sets_json(r.lower_sets, k);
        w["image"] = r.image;
        w["free"] = free;
        return {"projective", w};
    }
    if (r.collision) {
        w["collision"] = {{"lower_sets", SemilatticeChecks::lower_sets_json({r.collision->first, r.collision->second}, k)},
                          {"element", r.collision_element}};
    } else {
        w["missing"] = *r.missing;
    }
    return {"not_projective", w};
}

bool verify_classify_semilattice(const Request& req, const Certificate& cert)
{
    FinBModule mu = module_from_json(req.payload);
    const Json& w = cert.witness;
    auto prims = json_field(w, "primitives").get<std::vector<int>>();
    for (int p : prims)
        if (p < 0 || p >= mu.size()) return false;
    std::vector<int> expected;
    for (int x = 0; x < mu.size(); ++x)
        if (is_join_irreducible(mu, x)) expected.push_back(x);
    if (prims != expected) return false;
    const int k = static_cast<int>(prims.size());
    auto order = json_field(w, "primitive_order").get<std::vector<std::vector<bool>>>();
    if (static_cast<int>(order.size()) != k) return false;
    for (int a = 0; a < k; ++a) {
        if (static_cast<int>(order[a].size()) != k) return false;
        for (int b = 0; b < k; ++b)
            if (order[a][b] != mu.leq(prims[a], prims[b])) return false;
    }
    FinitePoset poset(order);
    auto join_of = [&](Mask m) {
        int acc = mu.bottom();
        for (int a = 0; a < k; ++a)
            if (mask_has(m, a)) acc = mu.join(acc, prims[a]);
        return acc;
    };
    if (cert.verdict == "not_projective") {
        if (auto it = w.find("missing"); it != w.end()) {
            int x = static_cast<int>(int_from_json(*it));
            if (x < 0 || x >= mu.size()) return false;
            Mask below = 0;
            for (int a = 0; a < k; ++a)
                if (mu.leq(prims[a], x)) below |= mask_bit(a);
            return join_of(below) != x;
        }
        const Json& col = json_field(w, "collision");
        const Json& sets = json_field(col, "lower_sets");
        if (!sets.is_array() || sets.size() != 2) return false;
        Mask a = SemilatticeChecks::mask_from_json(sets[0], k);
        Mask b = SemilatticeChecks::mask_from_json(sets[1], k);
        int e = static_cast<int>(int_from_json(json_field(col, "element")));
        return a != b && poset.is_lower_set(a) && poset.is_lower_set(b) && join_of(a) == e && join_of(b) == e;
    }
    if (cert.verdict != "projective") return false;
    const Json& sets_json = json_field(w, "lower_sets");
    auto image = json_field(w, "image").get<std::vector<int>>();
    if (!sets_json.is_array() || sets_json.size() != image.size()) return false;
    if (static_cast<int>(image.size()) != mu.size()) return false;
    std::map<Mask, int> index;
    for (std::size_t t = 0; t < image.size(); ++t) {
        Mask m = SemilatticeChecks::mask_from_json(sets_json[t], k);
        if (!poset.is_lower_set(m) || index.count(m) || join_of(m) != image[t]) return false;
        index[m] = image[t];
    }
    // Images distinct and as many as elements: a bijection.
    std::set<int> distinct(image.begin(), image.end());
    if (static_cast<int>(distinct.size()) != mu.size()) return false;
    // Union-closed family containing the empty set and every principal lower
    // set: this is all lower sets.
    if (!index.count(0)) return false;
    for (int a = 0; a < k; ++a)
        if (!index.count(poset.principal_lower_set(a))) return false;
    for (const auto& [m1, x1] : index)
        for (const auto& [m2, x2] : index) {
            auto it = index.find(m1 | m2);
            if (it == index.end() || it->second != mu.join(x1, x2)) return false;
        }
    bool free = true;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b && order[a][b]) free = false;
    return json_field(w, "free") == Json(free);
}

Outcome run_classify_quiver(const Request& req)
{
    auto q = quiver_from_json(req.payload);
    check_cap(q.n, req.options);
    if (q.pair.is_group()) return group_projectivity(q);
    return family_projectivity(FamilyPresentation::from_quiver(q));
}

bool verify_classify_quiver(const Request& req, const Certificate& cert)
{
    auto q = quiver_from_json(req.payload);
    if (q.pair.is_group()) return check_group_projectivity(q, cert.verdict, cert.witness);
    return check_family_projectivity(FamilyPresentation::from_quiver(q), cert.verdict, cert.witness);
}

Outcome run_family_check(const Request& req) { return family_projectivity(family_from(req.payload, req.options)); }

bool verify_family_check(const Request& req, const Certificate& cert)
{
    return check_family_projectivity(family_from_json(req.payload), cert.verdict, cert.witness);
}

Outcome run_closure(const Request& req)
{
    auto q = quiver_from_json(req.payload);
    check_cap(q.n, req.options);
    if (q.pair.is_group()) {
        try {
            return {"closed", group_closure_cert(q, kleene_closure(q))};
        } catch (const DegenerateQuiver& d) {
            return {"degenerate", {{"cycle", group_cycle_json(d.cycle())}}};
        }
    }
    auto fam = FamilyPresentation::from_quiver(q);
    try {
        return {"closed", family_closure_cert(fam, family_closure(fam))};
    } catch (const DegenerateFamily& d) {
        return {"degenerate", {{"cycle", family_cycle_json(d.cycle())}}};
    }
}

bool verify_closure(const Request& req, const Certificate& cert)
{
    auto q = quiver_from_json(req.payload);
    if (q.pair.is_group()) {
        if (cert.verdict == "degenerate") return check_group_cycle(q, json_field(cert.witness, "cycle"));
        return cert.verdict == "closed" && check_group_closure_cert(q, cert.witness).has_value();
    }
    auto fam = FamilyPresentation::from_quiver(q);
    if (cert.verdict == "degenerate") return check_family_cycle(fam, json_field(cert.witness, "cycle"));
    return cert.verdict == "closed" && check_family_closure_cert(fam, cert.witness).has_value();
}

bool check_dbm_matches(const ClosureMatrix& c, const Json& dbm_json)
{
    auto p = dbm_from_json(dbm_json);
    if (p.size() != c.size() || !p.nonempty()) return false;
    for (int i = 0; i < c.size(); ++i)
        for (int j = 0; j < c.size(); ++j) {
            const auto& b = p.bound(i, j);
            if (c(i, j).has_value() != b.has_value()) return false;
            if (b && *b != -*c(i, j)) return false;
        }
    return true;
}

Outcome run_polyhedron(const Request& req)
{
    auto q = group_quiver_from(req.payload, req.options);
    try {
        auto c = kleene_closure(q);
        return {"polyhedron", {{"closure", group_closure_cert(q, c)}, {"polyhedron", dbm_to_json(polyhedron_of(c))}}};
    } catch (const DegenerateQuiver& d) {
        return {"degenerate", {{"cycle", group_cycle_json(d.cycle())}}};
    }
}

bool verify_polyhedron(const Request& req, const Certificate& cert)
{
    auto q = quiver_from_json(req.payload);
    if (cert.verdict == "degenerate") return check_group_cycle(q, json_field(cert.witness, "cycle"));
    if (cert.verdict != "polyhedron") return false;
    auto c = check_group_closure_cert(q, json_field(cert.witness, "closure"));
    return c && check_dbm_matches(*c, json_field(cert.witness, "polyhedron"));
}

struct SeparateInput {
    QuiverPresentation q;
    Generator f, g;
};

SeparateInput separate_input(const Request& req)
{
    SeparateInput in{group_quiver_from(json_field(req.payload, "quiver"), req.options),
                     generator_from_json(json_field(req.payload, "f")),
                     generator_from_json(json_field(req.payload, "g"))};
    require_input(in.f.vertex < in.q.n && in.g.vertex < in.q.n, "generator vertex out of range");
    require_input(in.q.pair.group.contains(in.f.coef) && in.q.pair.group.contains(in.g.coef),
                  "generator coefficient outside the group");
    return in;
}

Outcome run_separate(const Request& req)
{
    auto in = separate_input(req);
    ClosureMatrix c;
    try {
        c = kleene_closure(in.q);
    } catch (const DegenerateQuiver& d) {
        return {"degenerate", {{"cycle", group_cycle_json(d.cycle())}}};
    }
    auto p = separate(c, in.f, in.g);
    if (!p) {
        auto path = realizing_path(in.q, c, in.f.vertex, in.g.vertex);
        return {"leq", {{"path", path_json(path)}, {"weight", to_json(*c(in.f.vertex, in.g.vertex))}}};
    }
    Rational phi_f = in.f.coef + (*p)[in.f.vertex];
    return {"not_leq", {{"point", to_json(*p)}, {"phi_f", to_json(phi_f)}, {"phi_g", to_json(Rational(0))}}};
}

bool verify_separate(const Request& req, const Certificate& cert)
{
    auto in = separate_input(req);
    const Json& w = cert.witness;
    if (cert.verdict == "degenerate") return check_group_cycle(in.q, json_field(w, "cycle"));
    if (cert.verdict == "leq") {
        auto path = path_from_json(json_field(w, "path"), in.q.edges.size());
        Rational weight = group_path_weight(in.q, path);
        return chain_ok(in.q.edges, path, in.f.vertex, in.g.vertex) &&
               rational_from_json(json_field(w, "weight")) == weight && in.f.coef - in.g.coef <= weight;
    }
    if (cert.verdict != "not_leq") return false;
    Point p = point_from_json(json_field(w, "point"), in.q.n);
    for (std::size_t e = 0; e < in.q.edges.size(); ++e)
        if (in.q.group_weight(e) + p[in.q.edges[e].src] > p[in.q.edges[e].dst]) return false;
    Rational phi_f = in.f.coef + p[in.f.vertex];
    Rational phi_g = in.g.coef + p[in.g.vertex];
    return phi_g == 0 && phi_f > 0 && rational_from_json(json_field(w, "phi_f")) == phi_f &&
           rational_from_json(json_field(w, "phi_g")) == phi_g;
}

Outcome run_fiber(const Request& req)
{
    auto fam = family_from(json_field(req.payload, "family"), req.options);
    Point q = point_from_json(json_field(req.payload, "point"), fam.dim());
    if (auto cyc = find_degenerate_cycle(fam)) return {"degenerate", {{"cycle", family_cycle_json(*cyc)}}};
    auto fq = fiber_quiver(fam, q);
    auto c = kleene_closure(fq);
    return {"fiber", {{"closure", group_closure_cert(fq, c)}, {"polyhedron", dbm_to_json(polyhedron_of(c))}}};
}

bool verify_fiber(const Request& req, const Certificate& cert)
{
    auto fam = family_from_json(json_field(req.payload, "family"));
    Point q = point_from_json(json_field(req.payload, "point"), fam.dim());
    if (cert.verdict == "degenerate") return check_family_cycle(fam, json_field(cert.witness, "cycle"));
    if (cert.verdict != "fiber") return false;
    auto fq = fiber_quiver(fam, q);
    auto c = check_group_closure_cert(fq, json_field(cert.witness, "closure"));
    return c && check_dbm_matches(*c, json_field(cert.witness, "polyhedron"));
}

// hom-check: group pairs compare generators through the target closure;
// affine pairs compare CPA bounds on the base.

struct GroupHomInput {
    QuiverPresentation source, target;
    std::vector<std::vector<Generator>> assignment;
};

std::vector<std::vector<Generator>> group_assignment(const Json& j, const QuiverPresentation& source,
                                                     const QuiverPresentation& target)
{
    require_input(j.is_array() && static_cast<int>(j.size()) == source.n, "need one image per source vertex");
    std::vector<std::vector<Generator>> out;
    for (const auto& img : j) {
        require_input(img.is_array(), "an image is an array of generators");
        std::vector<Generator> gens;
        for (const auto& g : img) {
            gens.push_back(generator_from_json(g));
            require_input(gens.back().vertex < target.n, "image generator vertex out of range");
            require_input(target.pair.group.contains(gens.back().coef), "image coefficient outside the group");
        }
        out.push_back(std::move(gens));
    }
    return out;
}

// First (edge, generator) whose shifted generator lies below no generator of
// the destination image.
std::optional<std::pair<int, int>> group_hom_failure(const QuiverPresentation& source, const ClosureMatrix& c,
                                                     const std::vector<std::vector<Generator>>& assignment)
{
    for (std::size_t e = 0; e < source.edges.size(); ++e) {
        const auto& edge = source.edges[e];
        for (std::size_t gi = 0; gi < assignment[edge.src].size(); ++gi) {
            const auto& g = assignment[edge.src][gi];
            Generator shifted{g.coef + source.group_weight(e), g.vertex};
            bool ok = std::any_of(assignment[edge.dst].begin(), assignment[edge.dst].end(),
                                  [&](const Generator& h) { return leq_elements(c, shifted, h); });
            if (!ok) return std::pair{static_cast<int>(e), static_cast<int>(gi)};
        }
    }
    return std::nullopt;
}

std::optional<std::pair<int, int>> family_hom_failure_at(const FamilyPresentation& source,
                                                         const FamilyClosure& w,
                                                         const std::vector<std::vector<AffineGenerator>>& assignment,
                                                         int e, int gi, const Point& q)
{
    const auto& edge = source.edges[e];
    const auto& g = assignment[edge.src][gi];
    Rational lhs = (edge.weight + g.coef)(q);
    for (const auto& h : assignment[edge.dst]) {
        auto v = cpa_eval(w(g.vertex, h.vertex), q);
        if (v && lhs <= *v + h.coef(q)) return std::nullopt;
    }
    return std::pair{e, gi};
}

struct FamilyHomInput {
    FamilyPresentation source, target;
    std::vector<std::vector<AffineGenerator>> assignment;
};

FamilyHomInput family_hom_input(const Request& req)
{
    FamilyHomInput in{family_from(json_field(req.payload, "source"), req.options),
                      family_from(json_field(req.payload, "target"), req.options), {}};
    require_input(*in.source.base() == *in.target.base(), "source and target must share the base");
    const Json& a = json_field(req.payload, "assignment");
    require_input(a.is_array() && static_cast<int>(a.size()) == in.source.n, "need one image per source vertex");
    for (const auto& img : a) {
        require_input(img.is_array(), "an image is an array of generators");
        std::vector<AffineGenerator> gens;
        for (const auto& g : img) {
            gens.push_back(affine_generator_from_json(g, in.target.dim()));
            require_input(gens.back().vertex < in.target.n, "image generator vertex out of range");
            validate_carrier(in.target.pair, gens.back().coef);
        }
        in.assignment.push_back(std::move(gens));
    }
    return in;
}

bool is_family_payload(const Request& req)
{
    const Json& s = json_field(req.payload, "source");
    auto it = s.find("pair");
    if (it != s.end()) return json_field(*it, "kind") != Json("group");
    return s.contains("base");
}

Outcome run_hom_check(const Request& req)
{
    if (is_family_payload(req)) {
        auto in = family_hom_input(req);
        if (auto cyc = find_degenerate_cycle(in.source)) return {"degenerate", {{"cycle", family_cycle_json(*cyc)}}};
        if (auto cyc = find_degenerate_cycle(in.target))
            return {"degenerate", {{"cycle", family_cycle_json(*cyc)}, {"in", "target"}}};
        auto w = family_closure(in.target);
        Json cert = family_closure_cert(in.target, w);
        auto r = vertical_hom_check(in.source, in.target, in.assignment);
        if (r.ok) return {"hom", {{"target_closure", cert}}};
        return {"not_hom",
                {{"target_closure", cert},
                 {"edge", r.failing_edge},
                 {"generator", r.failing_generator},
                 {"point", to_json(*r.witness)}}};
    }
    GroupHomInput in{group_quiver_from(json_field(req.payload, "source"), req.options),
                     group_quiver_from(json_field(req.payload, "target"), req.options),
                     {}};
    require_input(in.source.pair.group == in.target.pair.group, "quivers are over different groups");
    in.assignment = group_assignment(json_field(req.payload, "assignment"), in.source, in.target);
    try {
        (void)kleene_closure(in.source);
    } catch (const DegenerateQuiver& d) {
        return {"degenerate", {{"cycle", group_cycle_json(d.cycle())}}};
    }
    ClosureMatrix c;
    try {
        c = kleene_closure(in.target);
    } catch (const DegenerateQuiver& d) {
        return {"degenerate", {{"cycle", group_cycle_json(d.cycle())}, {"in", "target"}}};
    }
    auto r = check_module_hom(in.source, in.target, in.assignment);
    Json cert = group_closure_cert(in.target, c);
    if (r.ok) return {"hom", {{"target_closure", cert}}};
    auto fail = group_hom_failure(in.source, c, in.assignment);
    if (!fail) throw std::logic_error("hom check failed without a failing generator");
    return {"not_hom", {{"target_closure", cert}, {"edge", fail->first}, {"generator", fail->second}}};
}

bool verify_hom_check(const Request& req, const Certificate& cert)
{
    const Json& w = cert.witness;
    const bool in_target = w.contains("in");
    if (in_target && json_field(w, "in") != Json("target")) return false;
    if (is_family_payload(req)) {
        auto in = family_hom_input(req);
        if (cert.verdict == "degenerate")
            return check_family_cycle(in_target ? in.target : in.source, json_field(w, "cycle"));
        auto c = check_family_closure_cert(in.target, json_field(w, "target_closure"));
        if (!c) return false;
        if (cert.verdict == "hom") {
            for (const auto& edge : in.source.edges)
                for (const auto& g : in.assignment[edge.src]) {
                    CPAFunction bound = CPAFunction::bottom(in.target.base());
                    for (const auto& h : in.assignment[edge.dst])
                        if (!(*c)(g.vertex, h.vertex).is_bottom())
                            bound = cpa_join(bound, cpa_add((*c)(g.vertex, h.vertex),
                                                            CPAFunction::affine(in.target.base(), h.coef)));
                    if (!cpa_leq(CPAFunction::affine(in.target.base(), edge.weight + g.coef), bound)) return false;
                }
            return true;
        }
        if (cert.verdict != "not_hom") return false;
        auto e = int_from_json(json_field(w, "edge"));
        auto gi = int_from_json(json_field(w, "generator"));
        if (e < 0 || e >= static_cast<std::int64_t>(in.source.edges.size())) return false;
        if (gi < 0 || gi >= static_cast<std::int64_t>(in.assignment[in.source.edges[e].src].size())) return false;
        Point q = point_from_json(json_field(w, "point"), in.source.dim());
        if (!in.source.base()->contains(q)) return false;
        return family_hom_failure_at(in.source, *c, in.assignment, static_cast<int>(e), static_cast<int>(gi), q)
            .has_value();
    }
    auto source = quiver_from_json(json_field(req.payload, "source"));
    auto target = quiver_from_json(json_field(req.payload, "target"));
    auto assignment = group_assignment(json_field(req.payload, "assignment"), source, target);
    if (cert.verdict == "degenerate") return check_group_cycle(in_target ? target : source, json_field(w, "cycle"));
    auto c = check_group_closure_cert(target, json_field(w, "target_closure"));
    if (!c) return false;
    auto fail = group_hom_failure(source, *c, assignment);
    if (cert.verdict == "hom") return !fail.has_value();
    if (cert.verdict != "not_hom" || !fail) return false;
    // The reported pair must itself fail; it need not be the first one.
    auto e = int_from_json(json_field(w, "edge"));
    auto gi = int_from_json(json_field(w, "generator"));
    if (e < 0 || e >= static_cast<std::int64_t>(source.edges.size())) return false;
    const auto& edge = source.edges[e];
    if (gi < 0 || gi >= static_cast<std::int64_t>(assignment[edge.src].size())) return false;
    const auto& g = assignment[edge.src][gi];
    Generator shifted{g.coef + source.group_weight(e), g.vertex};
    return std::none_of(assignment[edge.dst].begin(), assignment[edge.dst].end(),
                        [&](const Generator& h) { return leq_elements(*c, shifted, h); });
}

Outcome run_dualize(const Request& req)
{
    auto q = group_quiver_from(req.payload, req.options);
    try {
        auto c = kleene_closure(q);
        return {"dual", {{"dual", to_json(order_dual(q))}, {"closure", group_closure_cert(q, c)}}};
    } catch (const DegenerateQuiver& d) {
        return {"degenerate", {{"cycle", group_cycle_json(d.cycle())}}};
    }
}

bool verify_dualize(const Request& req, const Certificate& cert)
{
    auto q = quiver_from_json(req.payload);
    if (cert.verdict == "degenerate") return check_group_cycle(q, json_field(cert.witness, "cycle"));
    if (cert.verdict != "dual") return false;
    if (!check_group_closure_cert(q, json_field(cert.witness, "closure"))) return false;
    auto d = quiver_from_json(json_field(cert.witness, "dual"));
    if (d.n != q.n || !(d.pair.group == q.pair.group) || d.edges.size() != q.edges.size()) return false;
    for (std::size_t e = 0; e < q.edges.size(); ++e)
        if (d.edges[e].src != q.edges[e].dst || d.edges[e].dst != q.edges[e].src ||
            d.group_weight(e) != q.group_weight(e))
            return false;
    return true;
}

// cpa: results carry, per piece, where it came from and a point where it is
// the unique maximum.

struct CpaInput {
    std::string op;
    PolytopePtr base;
    std::vector<AffineFunction> f, g;
    std::optional<Point> point;
};

std::vector<AffineFunction> raw_pieces(const Json& j, int dim)
{
    const Json& ps = json_field(j, "pieces");
    require_input(ps.is_array(), "pieces must be an array");
    std::vector<AffineFunction> out;
    for (const auto& p : ps) out.push_back(affine_from_json(p, dim));
    return out;
}

CpaInput cpa_input(const Request& req)
{
    CpaInput in;
    const Json& op = json_field(req.payload, "op");
    require_input(op.is_string(), "op must be a string");
    in.op = op.get<std::string>();
    static const std::set<std::string> ops = {"reduce", "join", "add", "leq", "eval"};
    require_input(ops.count(in.op) > 0, "unknown cpa op '" + in.op + "'");
    in.base = polytope_from_json(json_field(req.payload, "base"));
    in.f = raw_pieces(json_field(req.payload, "f"), in.base->dim());
    if (in.op == "join" || in.op == "add" || in.op == "leq")
        in.g = raw_pieces(json_field(req.payload, "g"), in.base->dim());
    if (in.op == "eval") {
        in.point = point_from_json(json_field(req.payload, "point"), in.base->dim());
        require_input(in.base->contains(*in.point), "evaluation point is outside the base");
    }
    return in;
}

// Candidate pieces the result may draw from, with their provenance.
std::vector<std::pair<AffineFunction, Json>> cpa_candidates(const CpaInput& in)
{
    std::vector<std::pair<AffineFunction, Json>> out;
    if (in.op == "add") {
        for (std::size_t a = 0; a < in.f.size(); ++a)
            for (std::size_t b = 0; b < in.g.size(); ++b) out.push_back({in.f[a] + in.g[b], Json{a, b}});
        return out;
    }
    for (std::size_t a = 0; a < in.f.size(); ++a) out.push_back({in.f[a], Json(a)});
    if (in.op == "join")
        for (std::size_t b = 0; b < in.g.size(); ++b) out.push_back({in.g[b], Json(in.f.size() + b)});
    return out;
}

Outcome run_cpa(const Request& req)
{
    auto in = cpa_input(req);
    CPAFunction f(in.base, in.f);
    if (in.op == "eval") {
        auto v = cpa_eval(f, *in.point);
        Json w{{"value", to_json(v)}};
        if (v) {
            for (std::size_t a = 0; a < in.f.size(); ++a)
                if (in.f[a](*in.point) == *v) {
                    w["argmax"] = a;
                    break;
                }
        }
        return {"value", w};
    }
    CPAFunction g(in.base, in.g);
    if (in.op == "leq") {
        auto r = cpa_leq(cpa_reduce(f), cpa_reduce(g));
        if (r.holds) return {"leq", Json::object()};
        return {"not_leq", {{"point", to_json(*r.witness)}}};
    }
    CPAFunction result = in.op == "reduce" ? cpa_reduce(f) : in.op == "join" ? cpa_join(f, g) : cpa_add(f, g);
    auto candidates = cpa_candidates(in);
    Json sources = Json::array(), points = Json::array();
    for (std::size_t k = 0; k < result.pieces().size(); ++k) {
        const auto& piece = result.pieces()[k];
        auto key = restriction_key(*in.base, piece);
        auto it = std::find_if(candidates.begin(), candidates.end(),
                               [&](const auto& c) { return restriction_key(*in.base, c.first) == key; });
        if (it == candidates.end()) throw std::logic_error("result piece not drawn from the inputs");
        sources.push_back(it->second);
        std::vector<AffineFunction> others;
        for (std::size_t l = 0; l < result.pieces().size(); ++l)
            if (l != k) others.push_back(result.pieces()[l]);
        auto q = strict_dominance_point(*in.base, piece, others);
        if (!q) throw std::logic_error("canonical piece without an essential point");
        points.push_back(to_json(*q));
    }
    return {"result", {{"result", to_json(result)}, {"sources", sources}, {"essential_points", points}}};
}

bool verify_cpa(const Request& req, const Certificate& cert)
{
    auto in = cpa_input(req);
    const Json& w = cert.witness;
    if (in.op == "eval") {
        if (cert.verdict != "value") return false;
        Weight v = weight_from_json(json_field(w, "value"));
        if (in.f.empty()) return !v && !w.contains("argmax");
        if (!v) return false;
        auto arg = int_from_json(json_field(w, "argmax"));
        if (arg < 0 || arg >= static_cast<std::int64_t>(in.f.size()) || in.f[arg](*in.point) != *v) return false;
        return std::all_of(in.f.begin(), in.f.end(), [&](const AffineFunction& p) { return p(*in.point) <= *v; });
    }
    if (in.op == "leq") {
        if (cert.verdict == "not_leq") {
            Point q = point_from_json(json_field(w, "point"), in.base->dim());
            if (!in.base->contains(q) || in.f.empty()) return false;
            Rational fq = in.f[0](q);
            for (const auto& p : in.f) fq = std::max(fq, p(q));
            return std::all_of(in.g.begin(), in.g.end(), [&](const AffineFunction& p) { return p(q) < fq; });
        }
        // No point where a piece of f beats every piece of g.
        if (cert.verdict != "leq") return false;
        for (const auto& p : in.f) {
            if (in.g.empty()) return false;
            if (strict_dominance_point(*in.base, p, in.g)) return false;
        }
        return true;
    }
    if (cert.verdict != "result") return false;
    CPAFunction result = cpa_from_json(json_field(w, "result"), in.base);
    const auto& pieces = json_field(json_field(w, "result"), "pieces");
    auto candidates = cpa_candidates(in);
    const Json& sources = json_field(w, "sources");
    const Json& points = json_field(w, "essential_points");
    if (!sources.is_array() || !points.is_array() || sources.size() != pieces.size() || points.size() != pieces.size())
        return false;
    std::vector<AffineFunction> listed;
    for (const auto& p : pieces) listed.push_back(affine_from_json(p, in.base->dim()));
    for (std::size_t k = 0; k < listed.size(); ++k) {
        auto it = std::find_if(candidates.begin(), candidates.end(),
                               [&](const auto& c) { return c.second == sources[k]; });
        if (it == candidates.end()) return false;
        if (restriction_key(*in.base, it->first) != restriction_key(*in.base, listed[k])) return false;
        Point q = point_from_json(points[k], in.base->dim());
        if (!in.base->contains(q)) return false;
        for (std::size_t l = 0; l < listed.size(); ++l)
            if (l != k && listed[l](q) >= listed[k](q)) return false;
    }
    // Every candidate is dominated by the listed pieces.
    for (const auto& c : candidates)
        if (!listed.empty() && strict_dominance_point(*in.base, c.first, listed)) return false;
    return listed.empty() == candidates.empty();
}

struct CommandEntry {
    std::function<Outcome(const Request&)> run;
    std::function<bool(const Request&, const Certificate&)> verify;
};

const std::map<std::string, CommandEntry>& commands()
{
    static const std::map<std::string, CommandEntry> table = {
        {"classify-semilattice", {run_classify_semilattice, verify_classify_semilattice}},
        {"classify-quiver", {run_classify_quiver, verify_classify_quiver}},
        {"closure", {run_closure, verify_closure}},
        {"polyhedron", {run_polyhedron, verify_polyhedron}},
        {"separate", {run_separate, verify_separate}},
        {"fiber", {run_fiber, verify_fiber}},
        {"family-check", {run_family_check, verify_family_check}},
        {"hom-check", {run_hom_check, verify_hom_check}},
        {"dualize", {run_dualize, verify_dualize}},
        {"cpa", {run_cpa, verify_cpa}},
    };
    return table;
}

const CommandEntry& command_entry(const std::string& name)
{
    auto it = commands().find(name);
    require_input(it != commands().end(), "unknown command '" + name + "'");
    return it->second;
}

} // namespace

Request Request::from_json(const Json& j)
{
    Request r;
    const Json& c = json_field(j, "command");
    require_input(c.is_string(), "command must be a string");
    r.command = c.get<std::string>();
    r.payload = json_field(j, "payload");
    if (auto it = j.find("options"); it != j.end()) {
        require_input(it->is_object(), "options must be an object");
        if (auto s = it->find("seed"); s != it->end()) r.options.seed = int_from_json(*s);
        if (auto s = it->find("cap_n"); s != it->end()) {
            auto cap = int_from_json(*s);
            require_input(cap >= 0 && cap <= kMaxPosetSize, "cap_n out of range");
            r.options.cap_n = static_cast<int>(cap);
        }
    }
    return r;
}

Json Request::to_json() const
{
    return Json{{"command", command},
                {"payload", payload},
                {"options", {{"seed", options.seed}, {"cap_n", options.cap_n}}}};
}

int verdict_exit_code(const std::string& verdict) { return kNegativeVerdicts.count(verdict) ? 1 : 0; }

int Certificate::exit_code() const { return verdict_exit_code(verdict); }

Json Certificate::to_json() const
{
    return Json{{"command", command}, {"verdict", verdict}, {"witness", witness}, {"replay", replay}};
}

Certificate Certificate::from_json(const Json& j)
{
    Certificate c;
    c.command = json_field(j, "command").get<std::string>();
    c.verdict = json_field(j, "verdict").get<std::string>();
    c.witness = json_field(j, "witness");
    c.replay = json_field(j, "replay");
    return c;
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = {"classify-semilattice", "classify-quiver", "closure",
                                                   "polyhedron",           "separate",        "fiber",
                                                   "family-check",         "hom-check",       "dualize",
                                                   "cpa"};
    return names;
}

std::string certificate_seal(const Certificate& certificate, const Request& request)
{
    Json body{{"command", certificate.command},
              {"verdict", certificate.verdict},
              {"witness", certificate.witness},
              {"payload", request.payload}};
    return fnv1a_hex(body.dump());
}

Certificate run(const Request& request)
{
    const auto& entry = command_entry(request.command);
    Outcome out;
    try {
        out = entry.run(request);
    } catch (const Json::exception& e) {
        throw InvalidInput(std::string("malformed JSON payload: ") + e.what());
    }
    Certificate cert{request.command, std::move(out.verdict), std::move(out.witness), Json::object()};
    cert.replay = Json{{"seed", request.options.seed}, {"cap_n", request.options.cap_n}};
    cert.replay["seal"] = certificate_seal(cert, request);
    return cert;
}

bool verify(const Certificate& certificate, const Request& request)
{
    try {
        if (certificate.command != request.command) return false;
        const Json& replay = certificate.replay;
        if (!replay.is_object() || json_field(replay, "seed") != Json(request.options.seed) ||
            json_field(replay, "cap_n") != Json(request.options.cap_n))
            return false;
        if (json_field(replay, "seal") != Json(certificate_seal(certificate, request))) return false;
        return command_entry(request.command).verify(request, certificate);
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace tropmod
