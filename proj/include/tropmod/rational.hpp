#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tropmod {

using Rational = mpq_class;
using Point = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational dot(const IntVector& a, const Point& x)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(static_cast<long>(a[i])) * x[i];
    return s;
}

inline std::int64_t dot(const IntVector& a, const IntVector& b)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Scales a nonzero rational vector to the primitive integer vector on the same ray.
IntVector primitive_integer_direction(const Point& v);

} // namespace tropmod
