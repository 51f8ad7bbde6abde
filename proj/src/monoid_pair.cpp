#include "tropmod/monoid_pair.hpp"

#include "tropmod/errors.hpp"

namespace tropmod {

MonoidPairSpec MonoidPairSpec::group_pair(GroupTag tag) { return {Kind::Group, tag, nullptr, {}}; }

MonoidPairSpec MonoidPairSpec::affine_pair(PolytopePtr base, GroupTag tag)
{
    if (!base) throw InvalidInput("affine pair needs a base polyhedron");
    return {Kind::Affine, tag, std::move(base), {}};
}

MonoidPairSpec MonoidPairSpec::bounded_affine_pair(PolytopePtr base, std::vector<IntVector> boundary_rays,
                                                   GroupTag tag)
{
    if (!base) throw InvalidInput("bounded affine pair needs a base polyhedron");
    for (const auto& r : boundary_rays)
        if (!base->has_recession_ray(r))
            throw InvalidInput("boundary ray is not a recession direction of the base");
    return {Kind::BoundedAffine, tag, std::move(base), std::move(boundary_rays)};
}

int MonoidPairSpec::dim() const { return base ? base->dim() : 0; }

void validate_carrier(const MonoidPairSpec& pair, const CarrierElement& a)
{
    if (pair.is_group()) {
        const auto* q = std::get_if<Rational>(&a);
        if (!q) throw InvalidInput("group pair expects a rational weight");
        if (!pair.group.contains(*q))
            throw InvalidInput("weight " + to_string(*q) + " is outside group " + pair.group.name());
        return;
    }
    const auto* f = std::get_if<AffineFunction>(&a);
    if (!f) throw InvalidInput("affine pair expects an affine-function weight");
    if (f->dim() != pair.dim()) throw InvalidInput("affine weight has wrong dimension");
    if (!pair.group.contains(f->constant))
        throw InvalidInput("constant " + to_string(f->constant) + " is outside group " + pair.group.name());
}

bool pair_is_integer(const MonoidPairSpec& pair, const CarrierElement& a)
{
    validate_carrier(pair, a);
    if (pair.is_group()) return std::get<Rational>(a) <= 0;
    auto m = affine_max_on(*pair.base, std::get<AffineFunction>(a));
    const auto* b = std::get_if<BoundedMax>(&m);
    return b && b->value <= 0;
}

bool pair_in_carrier(const MonoidPairSpec& pair, const AffineFunction& a)
{
    if (pair.kind != MonoidPairSpec::Kind::BoundedAffine) return true;
    for (const auto& r : pair.boundary_rays)
        if (dot(a.slope, r) > 0) return false;
    return true;
}

} // namespace tropmod
