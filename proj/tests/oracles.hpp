#pragma once
// Brute-force reference implementations. They share only data types with the
// library, never algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "tropmod/cpa.hpp"
#include "tropmod/semilattice.hpp"

namespace oracle {

using tropmod::Rational;
using Edge = std::tuple<int, int, Rational>;
using Matrix = std::vector<std::vector<std::optional<Rational>>>;

/// Maximum weight over all simple paths i -> j (the empty path for i == j).
inline Matrix simple_path_maxima(int n, const std::vector<Edge>& edges)
{
    Matrix best(n, std::vector<std::optional<Rational>>(n));
    std::vector<bool> seen(n, false);
    auto dfs = [&](auto&& self, int start, int v, const Rational& w) -> void {
        auto& slot = best[start][v];
        if (!slot || *slot < w) slot = w;
        for (const auto& [s, d, x] : edges) {
            if (s != v || seen[d]) continue;
            seen[d] = true;
            self(self, start, d, Rational(w + x));
            seen[d] = false;
        }
    };
    for (int s = 0; s < n; ++s) {
        seen.assign(n, false);
        seen[s] = true;
        dfs(dfs, s, s, Rational(0));
    }
    return best;
}

/// Some simple cycle (any rotation, any parallel-edge choice) has positive weight.
inline bool has_positive_simple_cycle(int n, const std::vector<Edge>& edges)
{
    std::vector<bool> seen(n, false);
    bool found = false;
    auto dfs = [&](auto&& self, int start, int v, const Rational& w) -> void {
        for (const auto& [s, d, x] : edges) {
            if (found || s != v) continue;
            if (d == start) {
                if (w + x > 0) found = true;
                continue;
            }
            if (seen[d]) continue;
            seen[d] = true;
            self(self, start, d, Rational(w + x));
            seen[d] = false;
        }
    };
    for (int s = 0; s < n && !found; ++s) {
        seen.assign(n, false);
        seen[s] = true;
        dfs(dfs, s, s, Rational(0));
    }
    return found;
}

/// Every lattice with n elements up to isomorphism, as join tables with
/// bottom 0 (and top n-1 when n >= 2).
inline std::vector<std::vector<std::vector<int>>> lattices_up_to_iso(int n)
{
    std::vector<std::vector<std::vector<int>>> out;
    if (n == 1) return {{{0}}};
    const int m = n - 2;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b) pairs.push_back({a, b});
    std::set<std::vector<bool>> canon_seen;
    for (std::uint32_t bits = 0; bits < (1U << pairs.size()); ++bits) {
        std::vector<std::vector<bool>> less(m, std::vector<bool>(m, false));
        for (std::size_t t = 0; t < pairs.size(); ++t)
            if ((bits >> t) & 1U) less[pairs[t].first][pairs[t].second] = true;
        bool ok = true;
        for (int a = 0; a < m && ok; ++a)
            for (int b = 0; b < m && ok; ++b) {
                if (less[a][b] && less[b][a]) ok = false;
                for (int c = 0; c < m && ok; ++c)
                    if (less[a][b] && less[b][c] && !less[a][c]) ok = false;
            }
        if (!ok) continue;
        // Full order: 0 bottom, n-1 top, middle element k at index k+1.
        auto leq = [&](int x, int y) {
            if (x == y || x == 0 || y == n - 1) return true;
            if (y == 0 || x == n - 1) return false;
            return bool(less[x - 1][y - 1]);
        };
        std::vector<std::vector<int>> join(n, std::vector<int>(n, -1));
        for (int x = 0; x < n && ok; ++x)
            for (int y = 0; y < n && ok; ++y) {
                std::vector<int> ub;
                for (int z = 0; z < n; ++z)
                    if (leq(x, z) && leq(y, z)) ub.push_back(z);
                int least = -1;
                for (int z : ub)
                    if (std::all_of(ub.begin(), ub.end(), [&](int u) { return leq(z, u); })) least = z;
                if (least < 0) ok = false;
                join[x][y] = least;
            }
        if (!ok) continue;
        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<bool> canon;
        do {
            std::vector<bool> code;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) code.push_back(less[perm[a]][perm[b]]);
            if (canon.empty() || code < canon) canon = code;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (canon_seen.insert(canon).second) out.push_back(join);
    }
    return out;
}

/// Distributivity with meets read off the order relation.
inline bool distributive(const std::vector<std::vector<int>>& join)
{
    const int n = static_cast<int>(join.size());
    auto leq = [&](int a, int b) { return join[a][b] == b; };
    auto meet = [&](int a, int b) {
        int best = -1;
        for (int c = 0; c < n; ++c)
            if (leq(c, a) && leq(c, b) && (best < 0 || leq(best, c))) best = c;
        return best;
    };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (meet(x, join[y][z]) != join[meet(x, y)][meet(x, z)]) return false;
    return true;
}

/// Join tables isomorphic via some bijection.
inline bool isomorphic(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b)
{
    const int n = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != n) return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            for (int y = 0; y < n && ok; ++y)
                if (perm[a[x][y]] != b[perm[x]][perm[y]]) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// All lower sets of a poset given by its relation, by subset enumeration.
inline std::vector<std::uint64_t> lower_sets(const std::vector<std::vector<bool>>& leq)
{
    const int n = static_cast<int>(leq.size());
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b)
            if ((s >> b) & 1U)
                for (int a = 0; a < n && ok; ++a)
                    if (leq[a][b] && !((s >> a) & 1U)) ok = false;
        if (ok) out.push_back(s);
    }
    return out;
}

/// Maps between the lower-set lattices that send the empty set to the empty
/// set and unions to unions, counted by backtracking.
inline long count_join_maps(const std::vector<std::vector<bool>>& p1, const std::vector<std::vector<bool>>& p2)
{
    auto l1 = lower_sets(p1), l2 = lower_sets(p2);
    std::vector<int> image(l1.size(), -1);
    long count = 0;
    auto consistent = [&](std::size_t k) {
        if (l1[k] == 0 && l2[image[k]] != 0) return false;
        for (std::size_t a = 0; a <= k; ++a)
            for (std::size_t b = 0; b <= k; ++b)
                if ((l1[a] | l1[b]) == l1[k] && l2[image[k]] != (l2[image[a]] | l2[image[b]])) return false;
        return true;
    };
    auto go = [&](auto&& self, std::size_t k) -> void {
        if (k == l1.size()) {
            ++count;
            return;
        }
        for (std::size_t v = 0; v < l2.size(); ++v) {
            image[k] = static_cast<int>(v);
            if (consistent(k)) self(self, k + 1);
        }
        image[k] = -1;
    };
    go(go, 0);
    return count;
}

/// Every partial order on n labelled points.
inline std::vector<std::vector<std::vector<bool>>> labelled_posets(int n)
{
    std::vector<std::vector<std::vector<bool>>> out;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) pairs.push_back({a, b});
    for (std::uint32_t bits = 0; bits < (1U << pairs.size()); ++bits) {
        std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
        for (int a = 0; a < n; ++a) leq[a][a] = true;
        for (std::size_t t = 0; t < pairs.size(); ++t)
            if ((bits >> t) & 1U) leq[pairs[t].first][pairs[t].second] = true;
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b) {
                if (a != b && leq[a][b] && leq[b][a]) ok = false;
                for (int c = 0; c < n && ok; ++c)
                    if (leq[a][b] && leq[b][c] && !leq[a][c]) ok = false;
            }
        if (ok) out.push_back(leq);
    }
    return out;
}

/// Pointwise max of affine pieces; nullopt for no pieces.
inline std::optional<Rational> eval_pieces(const std::vector<tropmod::AffineFunction>& pieces, const tropmod::Point& q)
{
    std::optional<Rational> best;
    for (const auto& p : pieces) {
        Rational v = p(q);
        if (!best || *best < v) best = v;
    }
    return best;
}

/// Emptiness of {p : p_i - p_j <= c(i,j)} for integer bounds, by searching
/// integer points with p_0 = 0 in a box large enough to contain one.
inline bool dbm_nonempty_by_search(const std::vector<std::vector<std::optional<long>>>& c)
{
    const int n = static_cast<int>(c.size());
    long radius = 0;
    for (const auto& row : c)
        for (const auto& x : row)
            if (x) radius += std::labs(*x);
    std::vector<long> p(n, 0);
    auto ok_upto = [&](int k) {
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= k; ++j)
                if (c[i][j] && p[i] - p[j] > *c[i][j]) return false;
        return true;
    };
    auto go = [&](auto&& self, int k) -> bool {
        if (k == n) return true;
        for (long v = -radius; v <= radius; ++v) {
            p[k] = v;
            if (ok_upto(k) && self(self, k + 1)) return true;
        }
        return false;
    };
    if (n == 0) return true;
    p[0] = 0;
    if (!ok_upto(0)) return false;
    return go(go, 1);
}

/// Random rational in [lo, hi] with denominator dividing den.
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den)
{
    std::uniform_int_distribution<long> d(lo * den, hi * den);
    Rational q(d(rng), den);
    q.canonicalize();
    return q;
}

} // namespace oracle
