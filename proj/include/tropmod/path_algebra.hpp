#pragma once

#include <optional>
#include <vector>

#include "tropmod/errors.hpp"
#include "tropmod/rational.hpp"

namespace tropmod {

/// Dense row-major n x n matrix.
template <class T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    SquareMatrix(int n, const T& fill) : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {}

    int size() const { return n_; }
    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

    SquareMatrix transpose() const
    {
        SquareMatrix t = *this;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t(i, j) = (*this)(j, i);
        return t;
    }

    bool operator==(const SquareMatrix&) const = default;

private:
    int n_ = 0;
    std::vector<T> data_;
};

/// An element of H extended by one sentinel (nullopt). Depending on context
/// the sentinel reads as "no path", "unbounded" or "-inf".
using Weight = std::optional<Rational>;

/// Max-plus arithmetic on Weight, with the sentinel as the absorbing zero.
struct MaxPlus {
    using value_type = Weight;

    value_type none() const { return std::nullopt; }
    value_type unit() const { return Rational(0); }
    bool is_none(const value_type& a) const { return !a.has_value(); }
    value_type join(const value_type& a, const value_type& b) const
    {
        if (!a) return b;
        if (!b) return a;
        return *a < *b ? *b : *a;
    }
    value_type concat(const value_type& a, const value_type& b) const
    {
        if (!a || !b) return std::nullopt;
        return Rational(*a + *b);
    }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
};

/// Kleene star by Floyd-Warshall relaxation. Only meaningful when every
/// cycle weight is <= unit; the diagonal is forced to the unit.
template <class Algebra>
void close_in_place(const Algebra& alg, SquareMatrix<typename Algebra::value_type>& m)
{
    const int n = m.size();
    for (int i = 0; i < n; ++i) m(i, i) = alg.join(m(i, i), alg.unit());
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (alg.is_none(m(i, k))) continue;
            for (int j = 0; j < n; ++j) {
                if (alg.is_none(m(k, j))) continue;
                m(i, j) = alg.join(m(i, j), alg.concat(m(i, k), m(k, j)));
            }
        }
    for (int i = 0; i < n; ++i) m(i, i) = alg.unit();
}

template <class T>
struct ReducedEdge {
    int src;
    int dst;
    T weight;
};

/// Minimal edge set whose closure is `closed`.
///
/// Vertices i, j with W(i,j) + W(j,i) = unit form a tight class; inside a
/// class they are joined by a single cycle in index order. Between classes
/// only the smallest representatives are connected, and an edge is kept
/// only if its weight is not the composite W(i,k) + W(k,j) through a third
/// class k.
template <class Algebra>
std::vector<ReducedEdge<typename Algebra::value_type>> reduce_edges(
    const Algebra& alg, const SquareMatrix<typename Algebra::value_type>& closed)
{
    const int n = closed.size();
    auto finite = [&](int i, int j) { return !alg.is_none(closed(i, j)); };
    std::vector<int> cls(n, -1);
    std::vector<int> reps;
    for (int i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = static_cast<int>(reps.size());
        for (int j = i + 1; j < n; ++j)
            if (cls[j] < 0 && finite(i, j) && finite(j, i)
                && alg.equal(alg.concat(closed(i, j), closed(j, i)), alg.unit()))
                cls[j] = cls[i];
        reps.push_back(i);
    }

    std::vector<ReducedEdge<typename Algebra::value_type>> out;
    for (std::size_t c = 0; c < reps.size(); ++c) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (cls[i] == static_cast<int>(c)) members.push_back(i);
        if (members.size() < 2) continue;
        for (std::size_t t = 0; t < members.size(); ++t) {
            int a = members[t], b = members[(t + 1) % members.size()];
            out.push_back({a, b, closed(a, b)});
        }
    }
    for (int a : reps) {
        for (int b : reps) {
            if (a == b || !finite(a, b)) continue;
            bool composite = false;
            for (int k : reps) {
                if (k == a || k == b || !finite(a, k) || !finite(k, b)) continue;
                if (alg.equal(alg.concat(closed(a, k), closed(k, b)), closed(a, b))) {
                    composite = true;
                    break;
                }
            }
            if (!composite) out.push_back({a, b, closed(a, b)});
        }
    }
    return out;
}

} // namespace tropmod
