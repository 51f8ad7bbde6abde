#pragma once

#include <variant>
#include <vector>

#include "tropmod/affine.hpp"
#include "tropmod/group.hpp"
#include "tropmod/polytope.hpp"

namespace tropmod {

/// A monoid pair (A; A+) with sharp A+. Three concrete families:
///  - Group: a subgroup H of Q, A+ = nonpositive elements;
///  - Affine: affine functions on a polyhedron, A+ = functions <= 0 on it;
///  - BoundedAffine: as Affine, but the carrier A is restricted to functions
///    bounded above along the declared boundary rays (a partial
///    compactification of the base). Quiver weights for this kind live in
///    the group of fractions, i.e. all affine functions.
struct MonoidPairSpec {
    enum class Kind { Group, Affine, BoundedAffine };

    Kind kind = Kind::Group;
    GroupTag group;
    PolytopePtr base;
    std::vector<IntVector> boundary_rays;

    static MonoidPairSpec group_pair(GroupTag tag = GroupTag::integers());
    static MonoidPairSpec affine_pair(PolytopePtr base, GroupTag tag = GroupTag::integers());
    static MonoidPairSpec bounded_affine_pair(PolytopePtr base, std::vector<IntVector> boundary_rays,
                                              GroupTag tag = GroupTag::integers());

    bool is_group() const { return kind == Kind::Group; }
    int dim() const;
};

using CarrierElement = std::variant<Rational, AffineFunction>;

/// Throws InvalidInput when a is not a well-formed element of the group of
/// fractions of the pair (wrong shape, wrong dimension, constant outside H).
void validate_carrier(const MonoidPairSpec& pair, const CarrierElement& a);

/// a in A+.
bool pair_is_integer(const MonoidPairSpec& pair, const CarrierElement& a);

/// a in A (as opposed to merely in the group of fractions). Always true for
/// Group and Affine pairs; for BoundedAffine, a must be bounded above along
/// every boundary ray.
bool pair_in_carrier(const MonoidPairSpec& pair, const AffineFunction& a);

} // namespace tropmod
