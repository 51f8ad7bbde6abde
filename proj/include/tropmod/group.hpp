#pragma once

#include <cstdint>
#include <string>

#include "tropmod/errors.hpp"
#include "tropmod/rational.hpp"

namespace tropmod {

/// A subgroup H of the rationals: Z, (1/d)Z or Q itself.
struct GroupTag {
    enum class Kind { Integers, Fractions, Rationals };

    Kind kind = Kind::Integers;
    std::int64_t denominator = 1; // only meaningful for Fractions

    static GroupTag integers() { return {}; }
    static GroupTag fractions(std::int64_t d);
    static GroupTag rationals() { return {Kind::Rationals, 1}; }

    bool contains(const Rational& q) const;
    std::string name() const;
    static GroupTag parse(const std::string& s);

    bool operator==(const GroupTag&) const = default;
};

/// An element of a tagged ordered group; construction validates membership.
class GroupValue {
public:
    GroupValue(Rational value, GroupTag tag);

    const Rational& value() const { return value_; }
    const GroupTag& tag() const { return tag_; }

private:
    Rational value_;
    GroupTag tag_;
};

} // namespace tropmod
