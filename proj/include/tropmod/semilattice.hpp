#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tropmod {

/// Element sets over a poset are bitmasks, so posets are capped at 64 points.
inline constexpr int kMaxPosetSize = 64;
/// Default bound on the number of elements a construction may produce.
inline constexpr std::size_t kDefaultModuleCap = std::size_t{1} << 16;
/// Bound for exhaustive antichain enumeration in decomposition checks.
inline constexpr int kDefaultDecompositionCap = 12;

using Mask = std::uint64_t;

inline bool mask_has(Mask m, int i) { return (m >> i) & 1U; }
inline Mask mask_bit(int i) { return Mask{1} << i; }

/// A finite partial order given by its full relation matrix.
class FinitePoset {
public:
    FinitePoset() = default;
    /// Validates reflexivity, antisymmetry and transitivity.
    explicit FinitePoset(std::vector<std::vector<bool>> leq);

    static FinitePoset antichain(int n);
    static FinitePoset chain(int n);
    /// Transitive-reflexive closure of the given strict relations.
    static FinitePoset from_relations(int n, const std::vector<std::pair<int, int>>& less);

    int size() const { return static_cast<int>(leq_.size()); }
    bool leq(int a, int b) const { return leq_[a][b]; }
    const std::vector<std::vector<bool>>& relation() const { return leq_; }
    /// Every finite poset is lower finite.
    bool lower_finite() const { return true; }

    FinitePoset opposite() const;
    /// Product order on pairs; (a, b) has index a * rhs.size() + b.
    static FinitePoset product(const FinitePoset& lhs, const FinitePoset& rhs);

    Mask principal_lower_set(int x) const;
    Mask lower_closure(Mask m) const;
    bool is_lower_set(Mask m) const;

    bool operator==(const FinitePoset&) const = default;

private:
    std::vector<std::vector<bool>> leq_;
};

/// A lower set of a poset, stored as a bitmask of its members.
struct LowerSet {
    Mask members = 0;
    bool contains(int x) const { return mask_has(members, x); }
    bool operator==(const LowerSet&) const = default;
};

/// A finite B-module: a join semilattice with bottom, as a join table.
class FinBModule {
public:
    FinBModule() = default;
    /// Validates the semilattice laws and the bottom element.
    FinBModule(std::vector<std::vector<int>> join, int bottom);

    int size() const { return static_cast<int>(join_.size()); }
    int join(int a, int b) const { return join_[a][b]; }
    int join_all(const std::vector<int>& xs) const;
    int join_mask(Mask m) const;
    int bottom() const { return bottom_; }
    bool leq(int a, int b) const { return join_[a][b] == b; }
    const std::vector<std::vector<int>>& table() const { return join_; }
    FinitePoset order() const;

private:
    std::vector<std::vector<int>> join_;
    int bottom_ = 0;
};

/// The free B-module on a poset: its lower sets under union.
struct FreeModule {
    FinBModule module;
    std::vector<Mask> lower_sets; // element index -> lower set

    int index_of(Mask lower_set) const;
};

/// Throws CapExceeded if the poset has more than `cap` lower sets.
FreeModule free_module_on_poset(const FinitePoset& poset, std::size_t cap = kDefaultModuleCap);

/// Image of a lower set under the free-module map induced by a monotone map.
Mask free_module_map(const FinitePoset& source, const FinitePoset& target, const std::vector<int>& f,
                     Mask lower_set);

/// Join-irreducible elements, ascending.
std::vector<int> primitives(const FinBModule& mu);

struct Decomposition {
    std::vector<int> antichain;     // maximal primitives below x
    bool unique_for_module = false; // every element has exactly one irredundant decomposition
};

/// Throws CapExceeded when the module has more than `cap` elements.
Decomposition irredundant_decomposition(const FinBModule& mu, int x, int cap = kDefaultDecompositionCap);

/// The map P(Prim mu) -> mu, subset |-> join, is a bijection.
struct FreenessCertificate {
    bool free = false;
    std::vector<int> basis;
    std::vector<int> image; // indexed by subset mask of basis positions; filled when free
    std::optional<std::pair<Mask, Mask>> collision;
    int collision_element = -1;
};

FreenessCertificate is_free(const FinBModule& mu);

/// The canonical map B(Prim mu, <=) -> mu, lower set |-> join, is a bijection.
struct ProjectivityCertificate {
    bool projective = false;
    std::vector<int> primitives;
    FinitePoset primitive_order;  // on positions 0..primitives.size()-1
    std::vector<Mask> lower_sets; // lower sets of primitive_order (masks over positions)
    std::vector<int> image;       // image[k] = join of lower_sets[k]
    std::optional<std::pair<Mask, Mask>> collision;
    int collision_element = -1;
    std::optional<int> missing;
};

ProjectivityCertificate is_projective(const FinBModule& mu, std::size_t cap = kDefaultModuleCap);

/// Meet of a and b: the join of all common lower bounds.
int meet(const FinBModule& mu, int a, int b);

/// Checks x ^ (y v z) = (x ^ y) v (x ^ z) for all triples.
bool distributivity_oracle(const FinBModule& mu);

/// Hom(B(source), B(target)) as the free module on source^op x target.
struct HomModule {
    FinitePoset source;
    FinitePoset target;
    FinitePoset pairs; // source^op x target
    FreeModule module;

    /// Applies the correspondence with the given element index to a lower set of source.
    Mask apply(int element, Mask source_lower_set) const;
};

HomModule hom_module(const FinitePoset& source, const FinitePoset& target, std::size_t cap = kDefaultModuleCap);

} // namespace tropmod
