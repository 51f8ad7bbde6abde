#include "tropmod/affine.hpp"

#include <sstream>

#include "tropmod/errors.hpp"

namespace tropmod {

AffineFunction AffineFunction::coordinate(int dim, int k)
{
    AffineFunction f = constant_fn(dim, 0);
    f.slope.at(k) = 1;
    return f;
}

bool AffineFunction::is_constant() const
{
    for (auto s : slope)
        if (s != 0) return false;
    return true;
}

AffineFunction AffineFunction::operator-() const
{
    AffineFunction r = *this;
    for (auto& s : r.slope) s = -s;
    r.constant = -r.constant;
    return r;
}

AffineFunction operator+(const AffineFunction& a, const AffineFunction& b)
{
    if (a.dim() != b.dim()) throw InvalidInput("affine functions of different dimension");
    AffineFunction r = a;
    for (std::size_t i = 0; i < r.slope.size(); ++i) r.slope[i] += b.slope[i];
    r.constant += b.constant;
    return r;
}

AffineFunction operator-(const AffineFunction& a, const AffineFunction& b) { return a + (-b); }

AffineFunction operator+(const AffineFunction& a, const Rational& c)
{
    AffineFunction r = a;
    r.constant += c;
    return r;
}

bool AffineFunction::operator<(const AffineFunction& o) const
{
    if (slope != o.slope) return slope < o.slope;
    return constant < o.constant;
}

std::string to_string(const AffineFunction& f)
{
    std::ostringstream out;
    bool first = true;
    auto var = [&](std::size_t k) {
        return f.slope.size() == 1 ? std::string("X") : "X" + std::to_string(k + 1);
    };
    for (std::size_t k = 0; k < f.slope.size(); ++k) {
        auto s = f.slope[k];
        if (s == 0) continue;
        if (first)
            out << (s < 0 ? "-" : "");
        else
            out << (s < 0 ? " - " : " + ");
        auto m = s < 0 ? -s : s;
        if (m != 1) out << m << "*";
        out << var(k);
        first = false;
    }
    if (first) return to_string(f.constant);
    if (f.constant != 0) out << (f.constant < 0 ? " - " : " + ") << to_string(Rational(abs(f.constant)));
    return out.str();
}

AffineMax affine_max_on(const RationalPolytope& domain, const AffineFunction& f)
{
    if (f.dim() != domain.dim()) throw InvalidInput("affine function and polytope differ in dimension");
    for (const auto& r : domain.rays())
        if (dot(f.slope, r) > 0) return UnboundedRay{r};
    const auto& vs = domain.vertices();
    BoundedMax best{f(vs.front()), vs.front()};
    for (const auto& v : vs) {
        Rational val = f(v);
        if (val > best.value) best = {val, v};
    }
    return best;
}

std::optional<Point> positive_point(const RationalPolytope& domain, const AffineFunction& f)
{
    auto m = affine_max_on(domain, f);
    if (auto* b = std::get_if<BoundedMax>(&m)) {
        if (b->value > 0) return b->vertex;
        return std::nullopt;
    }
    const auto& ray = std::get<UnboundedRay>(m).ray;
    const Point& v = domain.vertices().front();
    Rational base = f(v);
    std::int64_t rate = dot(f.slope, ray);
    // f(v + t*ray) = base + t*rate, rate > 0.
    Rational t = 0;
    if (base <= 0) {
        mpz_class fl;
        Rational need = -base / Rational(static_cast<long>(rate));
        mpz_fdiv_q(fl.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
        t = Rational(fl + 1);
    }
    Point q = v;
    for (std::size_t k = 0; k < q.size(); ++k) q[k] += t * Rational(static_cast<long>(ray[k]));
    return q;
}

} // namespace tropmod
