#include "tropmod/weight_polyhedron.hpp"

namespace tropmod {

WeightPolyhedron WeightPolyhedron::from_bounds(SquareMatrix<Weight> bounds)
{
    const int n = bounds.size();
    for (int i = 0; i < n; ++i)
        if (!bounds(i, i) || *bounds(i, i) > 0) bounds(i, i) = Rational(0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!bounds(i, k)) continue;
            for (int j = 0; j < n; ++j) {
                if (!bounds(k, j)) continue;
                Rational via = *bounds(i, k) + *bounds(k, j);
                if (!bounds(i, j) || via < *bounds(i, j)) bounds(i, j) = via;
            }
        }
    WeightPolyhedron p;
    p.nonempty_ = true;
    for (int i = 0; i < n; ++i)
        if (*bounds(i, i) < 0) p.nonempty_ = false;
    p.dbm_ = std::move(bounds);
    return p;
}

bool WeightPolyhedron::contains(const Point& p) const
{
    if (static_cast<int>(p.size()) != size()) return false;
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j)
            if (dbm_(i, j) && p[i] - p[j] > *dbm_(i, j)) return false;
    return true;
}

WeightPolyhedron polyhedron_of(const ClosureMatrix& c)
{
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
        if (c(i, i) != Rational(0)) throw InvalidInput("closure diagonal must be 0");
        for (int j = 0; j < n; ++j)
            if (c(i, j) && c(j, i) && *c(i, j) + *c(j, i) > 0) throw InvalidInput("closure is degenerate");
    }
    WeightPolyhedron p;
    p.dbm_ = SquareMatrix<Weight>(n, std::nullopt);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (c(i, j)) p.dbm_(i, j) = Rational(-*c(i, j));
    p.nonempty_ = true;
    return p;
}

ClosureMatrix pomod_of(const WeightPolyhedron& p)
{
    if (!p.nonempty()) throw InvalidInput("empty weight polyhedron has no dual po-module");
    ClosureMatrix c(p.size(), std::nullopt);
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j)
            if (p.bound(i, j)) c(i, j) = Rational(-*p.bound(i, j));
    return c;
}

bool is_monotone_functional(const ClosureMatrix& c, const Point& p)
{
    if (static_cast<int>(p.size()) != c.size()) return false;
    for (int k = 0; k < c.size(); ++k)
        for (int l = 0; l < c.size(); ++l)
            if (c(k, l) && p[l] < *c(k, l) + p[k]) return false;
    return true;
}

std::optional<Point> separate(const ClosureMatrix& c, const Generator& f, const Generator& g)
{
    const int n = c.size();
    if (f.vertex < 0 || f.vertex >= n || g.vertex < 0 || g.vertex >= n)
        throw InvalidInput("generator vertex out of range");
    if (leq_elements(c, f, g)) return std::nullopt;

    const int i = f.vertex, j = g.vertex;
    std::vector<std::optional<Rational>> p(n);
    p[j] = -g.coef;
    if (c(i, j)) {
        // Largest value allowed by the path i -> j; strictly above -f.coef
        // because f is not below g.
        p[i] = *p[j] - *c(i, j);
    } else {
        Rational v = -f.coef;
        if (c(j, i) && *c(j, i) + *p[j] > v) v = *c(j, i) + *p[j];
        p[i] = v + 1;
    }
    for (int k = 0; k < n; ++k) {
        if (p[k]) continue;
        std::optional<Rational> lo, hi;
        for (int m = 0; m < n; ++m) {
            if (!p[m]) continue;
            if (c(m, k)) {
                Rational v = *c(m, k) + *p[m];
                if (!lo || v > *lo) lo = v;
            }
            if (c(k, m)) {
                Rational v = *p[m] - *c(k, m);
                if (!hi || v < *hi) hi = v;
            }
        }
        p[k] = lo ? *lo : (hi ? *hi : Rational(0));
    }
    Point out;
    for (auto& v : p) out.push_back(*v);
    if (!is_monotone_functional(c, out) || out[j] + g.coef != 0 || !(out[i] + f.coef > 0))
        throw std::logic_error("separate: constructed functional failed verification");
    return out;
}

bool extended_membership(const WeightPolyhedron& p, const ExtendedPoint& x, const ClosureMatrix& c)
{
    const int n = c.size();
    if (static_cast<int>(x.size()) != n || p.size() != n) return false;
    for (int i = 0; i < n; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < n; ++j) {
            if (!c(i, j)) continue;
            if (!x[j]) return false;
            if (*x[i] - *x[j] > *p.bound(i, j)) return false;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (x[i] && x[j] && p.bound(i, j) && *x[i] - *x[j] > *p.bound(i, j)) return false;
    return true;
}

std::vector<Mask> strata(const ClosureMatrix& c, int cap)
{
    const int n = c.size();
    if (n > cap) throw CapExceeded("strata enumeration is limited to " + std::to_string(cap) + " coordinates");
    std::vector<Mask> reach(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (c(i, j)) reach[i] |= mask_bit(j);
    std::vector<Mask> out;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        bool closed = true;
        for (int i = 0; i < n && closed; ++i)
            if (mask_has(s, i) && (reach[i] & ~s)) closed = false;
        if (closed) out.push_back(s);
    }
    return out;
}

bool check_affine_map(const WeightPolyhedron& source, const WeightPolyhedron& target, const AffineWeightMap& m)
{
    if (!source.nonempty() || !target.nonempty()) throw InvalidInput("affine maps are checked between nonempty polyhedra");
    const int n2 = target.size();
    if (static_cast<int>(m.index_map.size()) != n2 || static_cast<int>(m.translation.size()) != n2)
        throw InvalidInput("affine weight map must be indexed by target coordinates");
    for (int s : m.index_map)
        if (s < 0 || s >= source.size()) throw InvalidInput("affine weight map index out of range");
    for (int k = 0; k < n2; ++k)
        for (int l = 0; l < n2; ++l) {
            if (k == l || !target.bound(k, l)) continue;
            Rational need = *target.bound(k, l) - m.translation[k] + m.translation[l];
            int s = m.index_map[k], r = m.index_map[l];
            if (s == r) {
                if (need < 0) return false;
            } else if (!source.bound(s, r) || *source.bound(s, r) > need) {
                return false;
            }
        }
    return true;
}

SLPolyhedron project_diagonal(const WeightPolyhedron& p)
{
    if (p.size() == 0) throw InvalidInput("polyhedron has no coordinates");
    if (!p.nonempty()) throw InvalidInput("cannot project an empty polyhedron");
    SLPolyhedron sl;
    sl.polyhedron = p;
    sl.reference = p.size() - 1;
    const int r = sl.reference;
    for (int i = 0; i < r; ++i) {
        Weight lo = p.bound(r, i) ? Weight(Rational(-*p.bound(r, i))) : std::nullopt;
        sl.coordinate_bounds.emplace_back(lo, p.bound(i, r));
    }
    sl.laterally_compact = true;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j)
            if (!p.bound(i, j)) sl.laterally_compact = false;
    return sl;
}

} // namespace tropmod
