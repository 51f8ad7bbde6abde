#include "tropmod/group.hpp"

#include "tropmod/errors.hpp"

namespace tropmod {

GroupTag GroupTag::fractions(std::int64_t d)
{
    if (d <= 0) throw InvalidInput("group (1/d)Z needs a positive d");
    if (d == 1) return integers();
    return {Kind::Fractions, d};
}

bool GroupTag::contains(const Rational& q) const
{
    switch (kind) {
    case Kind::Integers: return q.get_den() == 1;
    case Kind::Fractions:
        return q.get_den().fits_slong_p() && denominator % q.get_den().get_si() == 0;
    case Kind::Rationals: return true;
    }
    return false;
}

std::string GroupTag::name() const
{
    switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::Fractions: return "1/" + std::to_string(denominator) + "Z";
    case Kind::Rationals: return "Q";
    }
    return "?";
}

GroupTag GroupTag::parse(const std::string& s)
{
    if (s == "Z") return integers();
    if (s == "Q") return rationals();
    if (s.size() > 3 && s.rfind("1/", 0) == 0 && s.back() == 'Z') {
        try {
            return fractions(std::stoll(s.substr(2, s.size() - 3)));
        } catch (const std::logic_error&) {
        }
    }
    throw InvalidInput("unknown group tag '" + s + "' (expected Z, Q or 1/dZ)");
}

GroupValue::GroupValue(Rational value, GroupTag tag) : value_(std::move(value)), tag_(tag)
{
    if (!tag_.contains(value_))
        throw InvalidInput("value " + to_string(value_) + " is not in group " + tag_.name());
}

} // namespace tropmod
