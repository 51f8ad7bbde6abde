#include "tropmod/polytope.hpp"

#include <algorithm>
#include <optional>

#include "tropmod/errors.hpp"

namespace tropmod {

namespace {

using Matrix = std::vector<Point>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& m, int cols)
{
    std::vector<int> pivots;
    int row = 0;
    for (int c = 0; c < cols && row < static_cast<int>(m.size()); ++c) {
        int p = row;
        while (p < static_cast<int>(m.size()) && m[p][c] == 0) ++p;
        if (p == static_cast<int>(m.size())) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (int r = 0; r < static_cast<int>(m.size()); ++r) {
            if (r == row || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

Point to_point(const IntVector& v)
{
    Point p;
    for (auto x : v) p.emplace_back(static_cast<long>(x));
    return p;
}

// Solve the square system rows . x = rhs; nullopt if singular.
std::optional<Point> solve_square(const std::vector<const Halfspace*>& rows, int dim)
{
    Matrix m;
    for (const auto* h : rows) {
        Point r = to_point(h->normal);
        r.push_back(h->rhs);
        m.push_back(std::move(r));
    }
    auto piv = rref(m, dim);
    if (static_cast<int>(piv.size()) < dim) return std::nullopt;
    Point x(dim);
    for (int i = 0; i < dim; ++i) x[i] = m[i][dim];
    return x;
}

// One-dimensional null space of the given rows (rank dim-1), else nullopt.
std::optional<Point> null_direction(const std::vector<const Halfspace*>& rows, int dim)
{
    Matrix m;
    for (const auto* h : rows) m.push_back(to_point(h->normal));
    auto piv = rref(m, dim);
    if (static_cast<int>(piv.size()) != dim - 1) return std::nullopt;
    int free_col = 0;
    for (int c = 0; c < dim; ++c) {
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) {
            free_col = c;
            break;
        }
    }
    Point x(dim, Rational(0));
    x[free_col] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -m[r][free_col];
    return x;
}

template <class F>
void for_each_subset(int m, int k, F&& f)
{
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k > m) return;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

RationalPolytope RationalPolytope::from_halfspaces(int dim, std::vector<Halfspace> halfspaces)
{
    if (dim < 0 || dim > kMaxPolytopeDim)
        throw InvalidInput("polytope dimension must be in [0, " + std::to_string(kMaxPolytopeDim) + "]");
    for (const auto& h : halfspaces)
        if (static_cast<int>(h.normal.size()) != dim) throw InvalidInput("halfspace normal has wrong length");

    RationalPolytope p;
    p.dim_ = dim;
    p.halfspaces_ = std::move(halfspaces);

    if (dim == 0) {
        for (const auto& h : p.halfspaces_)
            if (h.rhs < 0) throw InvalidInput("polytope is empty");
        p.vertices_.push_back({});
        return p;
    }

    {
        Matrix normals;
        for (const auto& h : p.halfspaces_) normals.push_back(to_point(h.normal));
        if (static_cast<int>(rref(normals, dim).size()) < dim)
            throw InvalidInput("polyhedron is not strongly convex (it contains a line)");
    }

    const int m = static_cast<int>(p.halfspaces_.size());
    for_each_subset(m, dim, [&](const std::vector<int>& idx) {
        std::vector<const Halfspace*> rows;
        for (int i : idx) rows.push_back(&p.halfspaces_[i]);
        auto x = solve_square(rows, dim);
        if (!x || !p.contains(*x)) return;
        if (std::find(p.vertices_.begin(), p.vertices_.end(), *x) == p.vertices_.end()) p.vertices_.push_back(*x);
    });
    if (p.vertices_.empty()) throw InvalidInput("polytope is empty");
    std::sort(p.vertices_.begin(), p.vertices_.end());

    for_each_subset(m, dim - 1, [&](const std::vector<int>& idx) {
        std::vector<const Halfspace*> rows;
        for (int i : idx) rows.push_back(&p.halfspaces_[i]);
        auto dir = null_direction(rows, dim);
        if (!dir) return;
        for (int sign : {1, -1}) {
            Point d = *dir;
            if (sign < 0)
                for (auto& x : d) x = -x;
            IntVector r = primitive_integer_direction(d);
            if (!p.has_recession_ray(r)) continue;
            if (std::find(p.rays_.begin(), p.rays_.end(), r) == p.rays_.end()) p.rays_.push_back(r);
        }
    });
    std::sort(p.rays_.begin(), p.rays_.end());
    return p;
}

bool RationalPolytope::contains(const Point& q) const
{
    if (static_cast<int>(q.size()) != dim_) return false;
    return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                       [&](const Halfspace& h) { return dot(h.normal, q) <= h.rhs; });
}

bool RationalPolytope::has_recession_ray(const IntVector& r) const
{
    if (static_cast<int>(r.size()) != dim_) return false;
    if (std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; })) return false;
    return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                       [&](const Halfspace& h) { return dot(h.normal, r) <= 0; });
}

PolytopePtr make_polytope(int dim, std::vector<Halfspace> halfspaces)
{
    return std::make_shared<const RationalPolytope>(RationalPolytope::from_halfspaces(dim, std::move(halfspaces)));
}

PolytopePtr interval(const Rational& lo, const Rational& hi)
{
    return make_polytope(1, {{{1}, hi}, {{-1}, -lo}});
}

PolytopePtr lower_halfline(const Rational& hi) { return make_polytope(1, {{{1}, hi}}); }

PolytopePtr box(const std::vector<std::pair<Rational, Rational>>& bounds)
{
    const int d = static_cast<int>(bounds.size());
    std::vector<Halfspace> hs;
    for (int k = 0; k < d; ++k) {
        IntVector e(d, 0);
        e[k] = 1;
        hs.push_back({e, bounds[k].second});
        e[k] = -1;
        hs.push_back({e, -bounds[k].first});
    }
    return make_polytope(d, std::move(hs));
}

bool same_domain(const PolytopePtr& a, const PolytopePtr& b)
{
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

} // namespace tropmod
