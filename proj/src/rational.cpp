#include "tropmod/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace tropmod {

IntVector primitive_integer_direction(const Point& v)
{
    mpz_class lcm = 1;
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const auto& x : v) {
        mpz_class z = x.get_num() * (lcm / x.get_den());
        ints.push_back(z);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
    if (g == 0) throw std::logic_error("primitive_integer_direction: zero vector");
    IntVector out;
    for (auto& z : ints) {
        mpz_class q = z / g;
        if (!q.fits_slong_p()) throw std::overflow_error("direction entry does not fit in 64 bits");
        out.push_back(q.get_si());
    }
    return out;
}

} // namespace tropmod
