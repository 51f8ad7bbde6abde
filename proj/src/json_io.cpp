#include "tropmod/json_io.hpp"

namespace tropmod {

void require_input(bool cond, const std::string& msg)
{
    if (!cond) throw InvalidInput(msg);
}

const Json& json_field(const Json& j, const char* key)
{
    require_input(j.is_object(), std::string("expected an object with field '") + key + "'");
    auto it = j.find(key);
    require_input(it != j.end(), std::string("missing field '") + key + "'");
    return *it;
}

namespace {

Json integer_json(const mpz_class& z)
{
    if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
    return Json(z.get_str());
}

mpz_class integer_from_json(const Json& j)
{
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return mpz_class(j.get<std::uint64_t>());
        return mpz_class(static_cast<long>(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        mpz_class z;
        require_input(z.set_str(j.get<std::string>(), 10) == 0, "malformed integer string");
        return z;
    }
    throw InvalidInput("expected an integer, got " + j.dump());
}

int index_from_json(const Json& j, int bound, const char* what)
{
    std::int64_t v = int_from_json(j);
    require_input(v >= 0 && v < bound, std::string(what) + " out of range");
    return static_cast<int>(v);
}

template <class T, class F>
SquareMatrix<T> square_from_json(const Json& rows, const T& fill, F&& entry)
{
    require_input(rows.is_array(), "expected a matrix");
    const int n = static_cast<int>(rows.size());
    SquareMatrix<T> m(n, fill);
    for (int i = 0; i < n; ++i) {
        require_input(rows[i].is_array() && static_cast<int>(rows[i].size()) == n, "matrix is not square");
        for (int j = 0; j < n; ++j) m(i, j) = entry(rows[i][j]);
    }
    return m;
}

template <class T, class F>
Json square_to_json(const SquareMatrix<T>& m, F&& entry)
{
    Json rows = Json::array();
    for (int i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(entry(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::int64_t int_from_json(const Json& j)
{
    require_input(j.is_number_integer(), "expected an integer, got " + j.dump());
    if (j.is_number_unsigned()) {
        require_input(j.get<std::uint64_t>() <= static_cast<std::uint64_t>(INT64_MAX), "integer too large");
    }
    return j.get<std::int64_t>();
}

Json to_json(const Rational& q) { return Json{{"num", integer_json(q.get_num())}, {"den", integer_json(q.get_den())}}; }

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer() || j.is_string()) return Rational(integer_from_json(j));
    require_input(j.is_object(), "expected a rational, got " + j.dump());
    mpz_class num = integer_from_json(json_field(j, "num"));
    mpz_class den = integer_from_json(json_field(j, "den"));
    require_input(den != 0, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Json to_json(const Weight& w) { return w ? to_json(*w) : Json(nullptr); }

Weight weight_from_json(const Json& j)
{
    if (j.is_null()) return std::nullopt;
    return rational_from_json(j);
}

Json to_json(const Point& p)
{
    Json out = Json::array();
    for (const auto& x : p) out.push_back(to_json(x));
    return out;
}

Point point_from_json(const Json& j, int dim)
{
    require_input(j.is_array(), "expected a point");
    require_input(dim < 0 || static_cast<int>(j.size()) == dim, "point has wrong dimension");
    Point p;
    for (const auto& x : j) p.push_back(rational_from_json(x));
    return p;
}

Json to_json(const IntVector& v) { return Json(v); }

IntVector int_vector_from_json(const Json& j, int dim)
{
    require_input(j.is_array(), "expected an integer vector");
    require_input(dim < 0 || static_cast<int>(j.size()) == dim, "integer vector has wrong dimension");
    IntVector v;
    for (const auto& x : j) v.push_back(int_from_json(x));
    return v;
}

Json to_json(const AffineFunction& f) { return Json{{"slope", to_json(f.slope)}, {"const", to_json(f.constant)}}; }

AffineFunction affine_from_json(const Json& j, int dim)
{
    return {int_vector_from_json(json_field(j, "slope"), dim), rational_from_json(json_field(j, "const"))};
}

Json to_json(const RationalPolytope& p)
{
    Json hs = Json::array();
    for (const auto& h : p.halfspaces()) hs.push_back({{"normal", to_json(h.normal)}, {"rhs", to_json(h.rhs)}});
    return Json{{"halfspaces", hs}};
}

PolytopePtr polytope_from_json(const Json& j)
{
    const Json& hs = json_field(j, "halfspaces");
    require_input(hs.is_array(), "halfspaces must be an array");
    int dim = -1;
    if (auto it = j.find("dim"); it != j.end()) dim = static_cast<int>(int_from_json(*it));
    std::vector<Halfspace> out;
    for (const auto& h : hs) {
        IntVector normal = int_vector_from_json(json_field(h, "normal"), dim);
        if (dim < 0) dim = static_cast<int>(normal.size());
        out.push_back({std::move(normal), rational_from_json(json_field(h, "rhs"))});
    }
    require_input(dim >= 0, "polytope dimension is unknown (no halfspaces and no dim)");
    return make_polytope(dim, std::move(out));
}

Json to_json(const CPAFunction& f)
{
    Json pieces = Json::array();
    for (const auto& p : f.pieces()) pieces.push_back(to_json(p));
    return Json{{"pieces", pieces}};
}

CPAFunction cpa_from_json(const Json& j, const PolytopePtr& domain)
{
    const Json& ps = json_field(j, "pieces");
    require_input(ps.is_array(), "pieces must be an array");
    std::vector<AffineFunction> pieces;
    for (const auto& p : ps) pieces.push_back(affine_from_json(p, domain->dim()));
    return cpa_reduce(CPAFunction(domain, std::move(pieces)));
}

Json to_json(const FinitePoset& p) { return Json{{"n", p.size()}, {"leq", p.relation()}}; }

FinitePoset poset_from_json(const Json& j)
{
    const int n = static_cast<int>(int_from_json(json_field(j, "n")));
    require_input(n >= 0 && n <= kMaxPosetSize, "poset size out of range");
    const Json& leq = json_field(j, "leq");
    require_input(leq.is_array() && static_cast<int>(leq.size()) == n, "leq must be an n x n matrix");
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    for (int a = 0; a < n; ++a) {
        require_input(leq[a].is_array() && static_cast<int>(leq[a].size()) == n, "leq must be an n x n matrix");
        for (int b = 0; b < n; ++b) {
            require_input(leq[a][b].is_boolean(), "leq entries must be booleans");
            rel[a][b] = leq[a][b].get<bool>();
        }
    }
    return FinitePoset(std::move(rel));
}

Json to_json(const FinBModule& m) { return Json{{"n", m.size()}, {"join", m.table()}, {"bottom", m.bottom()}}; }

FinBModule module_from_json(const Json& j)
{
    const int n = static_cast<int>(int_from_json(json_field(j, "n")));
    require_input(n >= 1, "a module has at least its bottom element");
    const Json& join = json_field(j, "join");
    require_input(join.is_array() && static_cast<int>(join.size()) == n, "join must be an n x n table");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
        require_input(join[a].is_array() && static_cast<int>(join[a].size()) == n, "join must be an n x n table");
        for (int b = 0; b < n; ++b) table[a][b] = index_from_json(join[a][b], n, "join entry");
    }
    return FinBModule(std::move(table), index_from_json(json_field(j, "bottom"), n, "bottom"));
}

Json to_json(const MonoidPairSpec& pair)
{
    Json out{{"group", pair.group.name()}};
    switch (pair.kind) {
    case MonoidPairSpec::Kind::Group: out["kind"] = "group"; break;
    case MonoidPairSpec::Kind::Affine: out["kind"] = "affine"; break;
    case MonoidPairSpec::Kind::BoundedAffine: out["kind"] = "bounded_affine"; break;
    }
    if (!pair.is_group()) out["base"] = to_json(*pair.base);
    if (pair.kind == MonoidPairSpec::Kind::BoundedAffine) {
        Json rays = Json::array();
        for (const auto& r : pair.boundary_rays) rays.push_back(to_json(r));
        out["boundary_rays"] = rays;
    }
    return out;
}

namespace {

GroupTag group_from_json(const Json& j)
{
    auto it = j.find("group");
    if (it == j.end()) return GroupTag::integers();
    require_input(it->is_string(), "group must be a string such as \"Z\", \"Q\" or \"1/2Z\"");
    return GroupTag::parse(it->get<std::string>());
}

MonoidPairSpec affine_pair_from(const Json& j, bool force_bounded)
{
    PolytopePtr base = polytope_from_json(json_field(j, "base"));
    GroupTag tag = group_from_json(j);
    auto it = j.find("boundary_rays");
    if (it == j.end() && !force_bounded) return MonoidPairSpec::affine_pair(base, tag);
    std::vector<IntVector> rays;
    if (it != j.end()) {
        require_input(it->is_array(), "boundary_rays must be an array");
        for (const auto& r : *it) rays.push_back(int_vector_from_json(r, base->dim()));
    }
    return MonoidPairSpec::bounded_affine_pair(base, std::move(rays), tag);
}

} // namespace

MonoidPairSpec pair_from_json(const Json& j)
{
    const Json& kind = json_field(j, "kind");
    require_input(kind.is_string(), "pair kind must be a string");
    const auto k = kind.get<std::string>();
    if (k == "group") return MonoidPairSpec::group_pair(group_from_json(j));
    if (k == "affine") {
        require_input(!j.contains("boundary_rays"), "affine pairs take no boundary rays; use bounded_affine");
        return affine_pair_from(j, false);
    }
    if (k == "bounded_affine") return affine_pair_from(j, true);
    throw InvalidInput("unknown pair kind '" + k + "'");
}

Json to_json(const CarrierElement& a)
{
    if (const auto* q = std::get_if<Rational>(&a)) return to_json(*q);
    return to_json(std::get<AffineFunction>(a));
}

CarrierElement carrier_from_json(const Json& j, const MonoidPairSpec& pair)
{
    CarrierElement a;
    if (pair.is_group())
        a = rational_from_json(j);
    else
        a = affine_from_json(j, pair.dim());
    validate_carrier(pair, a);
    return a;
}

Json to_json(const QuiverPresentation& q)
{
    Json edges = Json::array();
    for (const auto& e : q.edges) edges.push_back({{"src", e.src}, {"dst", e.dst}, {"w", to_json(e.weight)}});
    return Json{{"pair", to_json(q.pair)}, {"n", q.n}, {"edges", edges}};
}

QuiverPresentation quiver_from_json(const Json& j)
{
    require_input(j.is_object(), "a quiver must be a JSON object");
    MonoidPairSpec pair;
    if (auto it = j.find("pair"); it != j.end())
        pair = pair_from_json(*it);
    else if (j.contains("base"))
        pair = affine_pair_from(j, false);
    else
        pair = MonoidPairSpec::group_pair(group_from_json(j));
    QuiverPresentation q{pair, static_cast<int>(int_from_json(json_field(j, "n"))), {}};
    require_input(q.n >= 0, "negative vertex count");
    const Json& edges = json_field(j, "edges");
    require_input(edges.is_array(), "edges must be an array");
    for (const auto& e : edges) {
        int src = index_from_json(json_field(e, "src"), q.n, "edge src");
        int dst = index_from_json(json_field(e, "dst"), q.n, "edge dst");
        q.edges.push_back({src, dst, carrier_from_json(json_field(e, "w"), pair)});
    }
    q.validate();
    return q;
}

Json to_json(const FamilyPresentation& f) { return to_json(f.to_quiver()); }

FamilyPresentation family_from_json(const Json& j)
{
    auto q = quiver_from_json(j);
    require_input(!q.pair.is_group(), "a family needs a base polyhedron");
    return FamilyPresentation::from_quiver(q);
}

Json closure_to_json(const ClosureMatrix& c)
{
    return Json{{"W", square_to_json(c, [](const Weight& w) { return to_json(w); })}};
}

ClosureMatrix closure_from_json(const Json& j)
{
    return square_from_json<Weight>(json_field(j, "W"), std::nullopt, weight_from_json);
}

Json closure_to_json(const FamilyClosure& c)
{
    return Json{{"W", square_to_json(c, [](const CPAFunction& f) {
                     return f.is_bottom() ? Json(nullptr) : to_json(f);
                 })}};
}

FamilyClosure family_closure_from_json(const Json& j, const PolytopePtr& domain)
{
    return square_from_json<CPAFunction>(json_field(j, "W"), CPAFunction::bottom(domain), [&](const Json& e) {
        return e.is_null() ? CPAFunction::bottom(domain) : cpa_from_json(e, domain);
    });
}

Json dbm_to_json(const WeightPolyhedron& p)
{
    return Json{{"n", p.size()}, {"dbm", square_to_json(p.dbm(), [](const Weight& w) { return to_json(w); })}};
}

WeightPolyhedron dbm_from_json(const Json& j)
{
    auto m = square_from_json<Weight>(json_field(j, "dbm"), std::nullopt, weight_from_json);
    if (auto it = j.find("n"); it != j.end()) require_input(int_from_json(*it) == m.size(), "n does not match dbm");
    return WeightPolyhedron::from_bounds(std::move(m));
}

Json to_json(const ExtendedPoint& x)
{
    Json out = Json::array();
    for (const auto& w : x) out.push_back(to_json(w));
    return out;
}

ExtendedPoint extended_point_from_json(const Json& j)
{
    require_input(j.is_array(), "expected an extended point");
    ExtendedPoint x;
    for (const auto& w : j) x.push_back(weight_from_json(w));
    return x;
}

Json to_json(const Generator& g) { return Json{{"coef", to_json(g.coef)}, {"vertex", g.vertex}}; }

Generator generator_from_json(const Json& j)
{
    std::int64_t v = int_from_json(json_field(j, "vertex"));
    require_input(v >= 0 && v < INT32_MAX, "generator vertex out of range");
    return {rational_from_json(json_field(j, "coef")), static_cast<int>(v)};
}

Json to_json(const AffineGenerator& g) { return Json{{"coef", to_json(g.coef)}, {"vertex", g.vertex}}; }

AffineGenerator affine_generator_from_json(const Json& j, int dim)
{
    std::int64_t v = int_from_json(json_field(j, "vertex"));
    require_input(v >= 0 && v < INT32_MAX, "generator vertex out of range");
    return {affine_from_json(json_field(j, "coef"), dim), static_cast<int>(v)};
}

} // namespace tropmod
