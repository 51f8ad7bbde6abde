#include "tropmod/semilattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "tropmod/errors.hpp"

namespace tropmod {

FinitePoset::FinitePoset(std::vector<std::vector<bool>> leq) : leq_(std::move(leq))
{
    const int n = size();
    if (n > kMaxPosetSize) throw CapExceeded("posets are limited to 64 elements");
    for (const auto& row : leq_)
        if (static_cast<int>(row.size()) != n) throw InvalidInput("poset relation must be square");
    for (int a = 0; a < n; ++a) {
        if (!leq_[a][a]) throw InvalidInput("poset relation is not reflexive");
        for (int b = 0; b < n; ++b) {
            if (a != b && leq_[a][b] && leq_[b][a]) throw InvalidInput("poset relation is not antisymmetric");
            for (int c = 0; c < n; ++c)
                if (leq_[a][b] && leq_[b][c] && !leq_[a][c]) throw InvalidInput("poset relation is not transitive");
        }
    }
}

FinitePoset FinitePoset::antichain(int n) { return from_relations(n, {}); }

FinitePoset FinitePoset::chain(int n)
{
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i + 1 < n; ++i) rel.emplace_back(i, i + 1);
    return from_relations(n, rel);
}

FinitePoset FinitePoset::from_relations(int n, const std::vector<std::pair<int, int>>& less)
{
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) r[i][i] = true;
    for (auto [a, b] : less) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidInput("relation index out of range");
        r[a][b] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = true;
    return FinitePoset(std::move(r));
}

FinitePoset FinitePoset::opposite() const
{
    const int n = size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) r[a][b] = leq_[b][a];
    return FinitePoset(std::move(r));
}

FinitePoset FinitePoset::product(const FinitePoset& lhs, const FinitePoset& rhs)
{
    const int m = lhs.size(), k = rhs.size();
    std::vector<std::vector<bool>> r(m * k, std::vector<bool>(m * k));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < m; ++c)
                for (int d = 0; d < k; ++d) r[a * k + b][c * k + d] = lhs.leq(a, c) && rhs.leq(b, d);
    return FinitePoset(std::move(r));
}

Mask FinitePoset::principal_lower_set(int x) const
{
    Mask m = 0;
    for (int y = 0; y < size(); ++y)
        if (leq_[y][x]) m |= mask_bit(y);
    return m;
}

Mask FinitePoset::lower_closure(Mask m) const
{
    Mask out = 0;
    for (int x = 0; x < size(); ++x)
        if (mask_has(m, x)) out |= principal_lower_set(x);
    return out;
}

bool FinitePoset::is_lower_set(Mask m) const { return lower_closure(m) == m; }

FinBModule::FinBModule(std::vector<std::vector<int>> join, int bottom) : join_(std::move(join)), bottom_(bottom)
{
    const int n = size();
    if (n == 0) throw InvalidInput("a B-module has at least its bottom element");
    if (bottom_ < 0 || bottom_ >= n) throw InvalidInput("bottom index out of range");
    for (const auto& row : join_) {
        if (static_cast<int>(row.size()) != n) throw InvalidInput("join table must be square");
        for (int v : row)
            if (v < 0 || v >= n) throw InvalidInput("join table entry out of range");
    }
    for (int a = 0; a < n; ++a) {
        if (join_[a][a] != a) throw InvalidInput("join is not idempotent");
        if (join_[a][bottom_] != a) throw InvalidInput("bottom is not neutral for join");
        for (int b = 0; b < n; ++b) {
            if (join_[a][b] != join_[b][a]) throw InvalidInput("join is not commutative");
            for (int c = 0; c < n; ++c)
                if (join_[join_[a][b]][c] != join_[a][join_[b][c]]) throw InvalidInput("join is not associative");
        }
    }
}

int FinBModule::join_all(const std::vector<int>& xs) const
{
    int acc = bottom_;
    for (int x : xs) acc = join_[acc][x];
    return acc;
}

int FinBModule::join_mask(Mask m) const
{
    int acc = bottom_;
    for (int x = 0; x < size(); ++x)
        if (mask_has(m, x)) acc = join_[acc][x];
    return acc;
}

FinitePoset FinBModule::order() const
{
    const int n = size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) r[a][b] = leq(a, b);
    return FinitePoset(std::move(r));
}

int FreeModule::index_of(Mask lower_set) const
{
    auto it = std::find(lower_sets.begin(), lower_sets.end(), lower_set);
    if (it == lower_sets.end()) throw InvalidInput("not a lower set of this poset");
    return static_cast<int>(it - lower_sets.begin());
}

namespace {

std::vector<Mask> enumerate_lower_sets(const FinitePoset& p, std::size_t cap)
{
    const int n = p.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> below(n, 0);
    for (int x = 0; x < n; ++x) below[x] = __builtin_popcountll(p.principal_lower_set(x));
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });

    std::vector<Mask> out;
    auto rec = [&](auto&& self, int k, Mask cur) -> void {
        if (k == n) {
            if (out.size() >= cap) throw CapExceeded("lower-set count exceeds the configured cap");
            out.push_back(cur);
            return;
        }
        const int x = order[k];
        self(self, k + 1, cur);
        Mask strictly_below = p.principal_lower_set(x) & ~mask_bit(x);
        if ((strictly_below & cur) == strictly_below) self(self, k + 1, cur | mask_bit(x));
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
        int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
        return pa != pb ? pa < pb : a < b;
    });
    return out;
}

FinitePoset induced_order(const FinBModule& mu, const std::vector<int>& elems)
{
    const int k = static_cast<int>(elems.size());
    std::vector<std::vector<bool>> r(k, std::vector<bool>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) r[a][b] = mu.leq(elems[a], elems[b]);
    return FinitePoset(std::move(r));
}

Mask positions_to_elements(const std::vector<int>& elems, Mask positions)
{
    Mask m = 0;
    for (std::size_t i = 0; i < elems.size(); ++i)
        if (mask_has(positions, static_cast<int>(i))) m |= mask_bit(elems[i]);
    return m;
}

} // namespace

FreeModule free_module_on_poset(const FinitePoset& poset, std::size_t cap)
{
    FreeModule fm;
    fm.lower_sets = enumerate_lower_sets(poset, cap);
    const int n = static_cast<int>(fm.lower_sets.size());
    std::unordered_map<Mask, int> index;
    for (int i = 0; i < n; ++i) index.emplace(fm.lower_sets[i], i);
    std::vector<std::vector<int>> join(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) join[a][b] = index.at(fm.lower_sets[a] | fm.lower_sets[b]);
    fm.module = FinBModule(std::move(join), index.at(0));
    return fm;
}

Mask free_module_map(const FinitePoset& source, const FinitePoset& target, const std::vector<int>& f,
                     Mask lower_set)
{
    if (static_cast<int>(f.size()) != source.size()) throw InvalidInput("map has wrong domain size");
    Mask img = 0;
    for (int x = 0; x < source.size(); ++x)
        if (mask_has(lower_set, x)) img |= mask_bit(f[x]);
    return target.lower_closure(img);
}

std::vector<int> primitives(const FinBModule& mu)
{
    // x is join-irreducible iff the join of everything strictly below it is
    // strictly below it (equivalently: x has exactly one lower cover).
    std::vector<int> out;
    for (int x = 0; x < mu.size(); ++x) {
        if (x == mu.bottom()) continue;
        int acc = mu.bottom();
        for (int y = 0; y < mu.size(); ++y)
            if (y != x && mu.leq(y, x)) acc = mu.join(acc, y);
        if (acc != x) out.push_back(x);
    }
    return out;
}

Decomposition irredundant_decomposition(const FinBModule& mu, int x, int cap)
{
    if (mu.size() > cap) throw CapExceeded("decomposition uniqueness check is limited to modules of size " +
                                           std::to_string(cap));
    if (x < 0 || x >= mu.size()) throw InvalidInput("element index out of range");
    const auto prims = primitives(mu);
    Decomposition d;
    for (int p : prims) {
        if (!mu.leq(p, x)) continue;
        bool maximal = true;
        for (int q : prims)
            if (q != p && mu.leq(p, q) && mu.leq(q, x)) maximal = false;
        if (maximal) d.antichain.push_back(p);
    }
    if (mu.join_all(d.antichain) != x)
        throw std::logic_error("element is not the join of the primitives below it");

    const int k = static_cast<int>(prims.size());
    std::vector<int> count(mu.size(), 0);
    for (Mask s = 0; s < (Mask{1} << k); ++s) {
        bool antichain = true;
        int acc = mu.bottom();
        for (int i = 0; i < k && antichain; ++i) {
            if (!mask_has(s, i)) continue;
            acc = mu.join(acc, prims[i]);
            for (int j = i + 1; j < k; ++j)
                if (mask_has(s, j) && (mu.leq(prims[i], prims[j]) || mu.leq(prims[j], prims[i]))) antichain = false;
        }
        if (antichain) ++count[acc];
    }
    d.unique_for_module = std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
    return d;
}

FreenessCertificate is_free(const FinBModule& mu)
{
    FreenessCertificate cert;
    cert.basis = primitives(mu);
    const int k = static_cast<int>(cert.basis.size());
    if (k > 24) throw CapExceeded("too many primitives for a freeness check");
    const std::size_t subsets = std::size_t{1} << k;
    std::vector<Mask> seen(mu.size(), ~Mask{0});
    std::vector<int> image(subsets);
    for (Mask s = 0; s < subsets; ++s) {
        int e = mu.join_mask(positions_to_elements(cert.basis, s));
        image[s] = e;
        if (seen[e] != ~Mask{0}) {
            cert.collision = std::make_pair(seen[e], s);
            cert.collision_element = e;
            return cert;
        }
        seen[e] = s;
    }
    if (subsets != static_cast<std::size_t>(mu.size()))
        throw std::logic_error("injective join map from primitives is not onto");
    cert.free = true;
    cert.image = std::move(image);
    return cert;
}

ProjectivityCertificate is_projective(const FinBModule& mu, std::size_t cap)
{
    ProjectivityCertificate cert;
    cert.primitives = primitives(mu);
    cert.primitive_order = induced_order(mu, cert.primitives);
    cert.lower_sets = enumerate_lower_sets(cert.primitive_order, cap);
    std::vector<int> first(mu.size(), -1);
    for (std::size_t i = 0; i < cert.lower_sets.size(); ++i) {
        int e = mu.join_mask(positions_to_elements(cert.primitives, cert.lower_sets[i]));
        cert.image.push_back(e);
        if (first[e] >= 0) {
            cert.collision = std::make_pair(cert.lower_sets[first[e]], cert.lower_sets[i]);
            cert.collision_element = e;
            return cert;
        }
        first[e] = static_cast<int>(i);
    }
    for (int e = 0; e < mu.size(); ++e) {
        if (first[e] < 0) {
            cert.missing = e;
            return cert;
        }
    }
    cert.projective = true;
    return cert;
}

int meet(const FinBModule& mu, int a, int b)
{
    int acc = mu.bottom();
    for (int z = 0; z < mu.size(); ++z)
        if (mu.leq(z, a) && mu.leq(z, b)) acc = mu.join(acc, z);
    return acc;
}

bool distributivity_oracle(const FinBModule& mu)
{
    const int n = mu.size();
    std::vector<std::vector<int>> m(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m[a][b] = meet(mu, a, b);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (m[x][mu.join(y, z)] != mu.join(m[x][y], m[x][z])) return false;
    return true;
}

Mask HomModule::apply(int element, Mask source_lower_set) const
{
    const Mask corr = module.lower_sets.at(element);
    const int t = target.size();
    Mask out = 0;
    for (int a = 0; a < source.size(); ++a) {
        if (!mask_has(source_lower_set, a)) continue;
        for (int b = 0; b < t; ++b)
            if (mask_has(corr, a * t + b)) out |= mask_bit(b);
    }
    return out;
}

HomModule hom_module(const FinitePoset& source, const FinitePoset& target, std::size_t cap)
{
    if (source.size() * target.size() > kMaxPosetSize) throw CapExceeded("hom poset too large");
    HomModule h;
    h.source = source;
    h.target = target;
    h.pairs = FinitePoset::product(source.opposite(), target);
    h.module = free_module_on_poset(h.pairs, cap);
    return h;
}

} // namespace tropmod
