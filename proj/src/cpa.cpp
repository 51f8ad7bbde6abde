#include "tropmod/cpa.hpp"

#include <algorithm>
#include <map>

#include "tropmod/errors.hpp"
#include "tropmod/linear_feasibility.hpp"

namespace tropmod {

namespace {

Point as_point(const IntVector& v)
{
    Point p;
    for (auto x : v) p.emplace_back(static_cast<long>(x));
    return p;
}

std::vector<std::vector<Rational>> sorted_keys(const CPAFunction& f)
{
    std::vector<std::vector<Rational>> keys;
    for (const auto& p : f.pieces()) keys.push_back(restriction_key(*f.domain(), p));
    std::sort(keys.begin(), keys.end());
    return keys;
}

void require_same_domain(const CPAFunction& f, const CPAFunction& g)
{
    if (!same_domain(f.domain(), g.domain())) throw InvalidInput("CPA functions live on different domains");
}

} // namespace

CPAFunction::CPAFunction(PolytopePtr domain, std::vector<AffineFunction> pieces)
    : domain_(std::move(domain)), pieces_(std::move(pieces))
{
    if (!domain_) throw InvalidInput("CPA function needs a domain");
    for (const auto& p : pieces_)
        if (p.dim() != domain_->dim()) throw InvalidInput("CPA piece has wrong dimension");
}

CPAFunction CPAFunction::constant(PolytopePtr domain, const Rational& c)
{
    const int d = domain->dim();
    return CPAFunction(std::move(domain), {AffineFunction::constant_fn(d, c)});
}

CPAFunction CPAFunction::affine(PolytopePtr domain, AffineFunction f)
{
    return CPAFunction(std::move(domain), {std::move(f)});
}

bool CPAFunction::operator==(const CPAFunction& o) const
{
    if (!same_domain(domain_, o.domain_)) return false;
    if (pieces_.size() != o.pieces_.size()) return false;
    return sorted_keys(*this) == sorted_keys(o);
}

std::vector<Rational> restriction_key(const RationalPolytope& domain, const AffineFunction& f)
{
    std::vector<Rational> key;
    for (const auto& v : domain.vertices()) key.push_back(f(v));
    for (const auto& r : domain.rays()) key.emplace_back(static_cast<long>(dot(f.slope, r)));
    return key;
}

std::optional<Point> strict_dominance_point(const RationalPolytope& domain, const AffineFunction& piece,
                                            const std::vector<AffineFunction>& others)
{
    std::vector<LinearConstraint> sys;
    for (const auto& h : domain.halfspaces()) sys.push_back({as_point(h.normal), h.rhs, false});
    for (const auto& h : others) {
        AffineFunction diff = h - piece; // require diff(x) < 0
        sys.push_back({as_point(diff.slope), -diff.constant, true});
    }
    return find_point(domain.dim(), std::move(sys));
}

CPAFunction cpa_reduce(const CPAFunction& f)
{
    const auto& dom = *f.domain();
    std::map<std::vector<Rational>, AffineFunction> unique;
    for (const auto& p : f.pieces()) {
        auto key = restriction_key(dom, p);
        auto it = unique.find(key);
        if (it == unique.end())
            unique.emplace(std::move(key), p);
        else if (p < it->second)
            it->second = p;
    }
    std::vector<AffineFunction> pieces;
    for (auto& [_, p] : unique) pieces.push_back(std::move(p));

    for (std::size_t i = 0; i < pieces.size();) {
        std::vector<AffineFunction> others;
        for (std::size_t j = 0; j < pieces.size(); ++j)
            if (j != i) others.push_back(pieces[j]);
        if (strict_dominance_point(dom, pieces[i], others))
            ++i;
        else
            pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return CPAFunction(f.domain(), std::move(pieces));
}

CPAFunction cpa_join(const CPAFunction& f, const CPAFunction& g)
{
    require_same_domain(f, g);
    std::vector<AffineFunction> pieces = f.pieces();
    pieces.insert(pieces.end(), g.pieces().begin(), g.pieces().end());
    return cpa_reduce(CPAFunction(f.domain(), std::move(pieces)));
}

CPAFunction cpa_add(const CPAFunction& f, const CPAFunction& g)
{
    require_same_domain(f, g);
    std::vector<AffineFunction> pieces;
    for (const auto& a : f.pieces())
        for (const auto& b : g.pieces()) pieces.push_back(a + b);
    return cpa_reduce(CPAFunction(f.domain(), std::move(pieces)));
}

std::optional<Rational> cpa_eval(const CPAFunction& f, const Point& q)
{
    if (!f.domain()->contains(q)) throw InvalidInput("evaluation point is outside the domain");
    std::optional<Rational> best;
    for (const auto& p : f.pieces()) {
        Rational v = p(q);
        if (!best || v > *best) best = v;
    }
    return best;
}

LeqResult cpa_leq(const CPAFunction& f, const CPAFunction& g)
{
    require_same_domain(f, g);
    if (f.is_bottom()) return {};
    if (g.is_bottom()) return {false, f.domain()->vertices().front()};
    for (const auto& piece : f.pieces()) {
        if (auto q = strict_dominance_point(*f.domain(), piece, g.pieces())) return {false, std::move(q)};
    }
    return {};
}

std::string to_string(const CPAFunction& f)
{
    if (f.is_bottom()) return "-inf";
    std::string s;
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
        if (i) s += " v ";
        s += to_string(f.pieces()[i]);
    }
    return s;
}

} // namespace tropmod
