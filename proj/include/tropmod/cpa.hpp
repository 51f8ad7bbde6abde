#pragma once

#include <optional>
#include <vector>

#include "tropmod/affine.hpp"
#include "tropmod/polytope.hpp"

namespace tropmod {

/// A convex piecewise-affine function on a polyhedron: the pointwise max of
/// finitely many affine pieces, or bottom (no pieces, -inf everywhere).
///
/// Values produced by the cpa_* operations are canonical: duplicate pieces
/// are merged, every piece is strictly above all the others somewhere on the
/// domain, and pieces are ordered by their values at the domain's vertices
/// and rays. Two canonical functions are equal as functions iff operator==
/// holds.
class CPAFunction {
public:
    CPAFunction() = default;
    CPAFunction(PolytopePtr domain, std::vector<AffineFunction> pieces);

    static CPAFunction bottom(PolytopePtr domain) { return CPAFunction(std::move(domain), {}); }
    static CPAFunction constant(PolytopePtr domain, const Rational& c);
    static CPAFunction affine(PolytopePtr domain, AffineFunction f);

    const PolytopePtr& domain() const { return domain_; }
    const std::vector<AffineFunction>& pieces() const { return pieces_; }
    bool is_bottom() const { return pieces_.empty(); }

    /// Equality of canonical forms. On lower-dimensional domains pieces that
    /// agree on the domain compare equal.
    bool operator==(const CPAFunction& o) const;

private:
    PolytopePtr domain_;
    std::vector<AffineFunction> pieces_;
};

/// Key identifying an affine function restricted to a domain: its values at
/// the vertices followed by its slope against each recession ray.
std::vector<Rational> restriction_key(const RationalPolytope& domain, const AffineFunction& f);

CPAFunction cpa_reduce(const CPAFunction& f);
CPAFunction cpa_join(const CPAFunction& f, const CPAFunction& g);
CPAFunction cpa_add(const CPAFunction& f, const CPAFunction& g);
/// nullopt stands for -inf. Throws InvalidInput if q is outside the domain.
std::optional<Rational> cpa_eval(const CPAFunction& f, const Point& q);

struct LeqResult {
    bool holds = true;
    /// When the relation fails: a domain point with f(q) > g(q).
    std::optional<Point> witness;
    explicit operator bool() const { return holds; }
};

/// f <= g pointwise on the domain, decided exactly.
LeqResult cpa_leq(const CPAFunction& f, const CPAFunction& g);

/// True iff piece > every affine function in `others` somewhere on the
/// domain; the witness is such a point.
std::optional<Point> strict_dominance_point(const RationalPolytope& domain, const AffineFunction& piece,
                                            const std::vector<AffineFunction>& others);

std::string to_string(const CPAFunction& f);

} // namespace tropmod
