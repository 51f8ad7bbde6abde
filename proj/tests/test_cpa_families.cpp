#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "random_instances.hpp"
#include "tropmod/family.hpp"

using namespace tropmod;
using gen::q;

namespace {

AffineFunction X() { return AffineFunction::coordinate(1, 0); }
AffineFunction zero1() { return AffineFunction::constant_fn(1, 0); }

FamilyPresentation family(const MonoidPairSpec& pair, int n, std::vector<FamilyEdge> edges)
{
    FamilyPresentation f{pair, n, std::move(edges)};
    f.validate();
    return f;
}

MonoidPairSpec segment() { return MonoidPairSpec::affine_pair(interval(q(-1), q(1))); }
MonoidPairSpec open_half() { return MonoidPairSpec::affine_pair(lower_halfline(q(0))); }
MonoidPairSpec closed_half() { return MonoidPairSpec::bounded_affine_pair(lower_halfline(q(0)), {{-1}}); }

FamilyPresentation fam_eg() { return family(segment(), 2, {{0, 1, X()}, {0, 1, -X()}}); }

} // namespace

TEST_CASE("family_closure")
{
    auto eg = fam_eg();
    auto w = family_closure(eg);
    CHECK(w(0, 1) == CPAFunction(eg.base(), {X(), -X()}));
    CHECK(w(0, 1).pieces().size() == 2);
    CHECK(w(1, 0).is_bottom());
    CHECK(w(0, 0) == CPAFunction::constant(eg.base(), 0));

    auto back = family(segment(), 2, {{0, 1, X()}, {1, 0, -X()}});
    auto wb = family_closure(back);
    CHECK(wb(0, 1) == CPAFunction::affine(back.base(), X()));
    CHECK(wb(1, 0) == CPAFunction::affine(back.base(), -X()));

    auto none = family_closure(family(segment(), 3, {}));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(none(i, j).is_bottom() == (i != j));

    auto degenerate = family(segment(), 2, {{0, 1, X()}, {1, 0, zero1()}});
    try {
        family_closure(degenerate);
        FAIL("expected a degenerate family");
    } catch (const DegenerateFamily& d) {
        CHECK(degenerate.base()->contains(d.cycle().point));
        CHECK(d.cycle().value > 0);
        CHECK(d.cycle().weight(d.cycle().point) == d.cycle().value);
    }
}

TEST_CASE("family closure equals the join over simple paths")
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 60; ++t) {
        auto fam = gen::random_family(rng);
        auto w = family_closure(fam);
        for (int i = 0; i < fam.n; ++i)
            for (int j = 0; j < fam.n; ++j) {
                auto expected = gen::path_join(fam, i, j);
                CHECK(w(i, j) == expected);
                // Triangle law.
                for (int k = 0; k < fam.n; ++k)
                    if (!w(i, k).is_bottom() && !w(k, j).is_bottom())
                        CHECK(cpa_leq(cpa_add(w(i, k), w(k, j)), w(i, j)));
            }
    }
}

TEST_CASE("formal_leq versus leq_normalized")
{
    auto eg = fam_eg();
    AffineGenerator f{zero1(), 0}, g{zero1(), 1};
    CHECK_FALSE(formal_leq(eg, f, g));
    CHECK(leq_normalized(eg, f, g));

    CHECK(formal_leq(eg, f, {zero1(), 0}));
    CHECK(leq_normalized(eg, f, {zero1(), 0}));

    auto single = family(segment(), 2, {{0, 1, X()}});
    AffineGenerator a{X() + q(-1), 0}, b{zero1(), 1};
    CHECK(formal_leq(single, a, b));
    CHECK(leq_normalized(single, a, b));
}

TEST_CASE("formal order implies normalized order; failures are separated in a fiber")
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 40; ++t) {
        auto fam = gen::random_family(rng, 3);
        auto w = family_closure(fam);
        for (int s = 0; s < 6; ++s) {
            std::uniform_int_distribution<int> vd(0, fam.n - 1);
            AffineGenerator f{gen::random_affine(rng, fam.dim()), vd(rng)};
            AffineGenerator g{gen::random_affine(rng, fam.dim()), vd(rng)};
            auto norm = leq_normalized(w, f, g);
            if (formal_leq(fam, f, g)) CHECK(norm.holds);
            if (norm.holds) continue;
            REQUIRE(norm.witness);
            const Point& pt = *norm.witness;
            CHECK(fam.base()->contains(pt));
            auto c = kleene_closure(fiber_quiver(fam, pt));
            auto p = separate(c, {f.coef(pt), f.vertex}, {g.coef(pt), g.vertex});
            REQUIRE(p);
            CHECK(is_monotone_functional(c, *p));
            CHECK(g.coef(pt) + (*p)[g.vertex] == 0);
            CHECK(f.coef(pt) + (*p)[f.vertex] > 0);
        }
    }
}

TEST_CASE("fiber")
{
    auto eg = fam_eg();
    auto half = fiber(eg, {q(1, 2)});
    CHECK(half.bound(0, 1) == q(-1, 2));
    CHECK_FALSE(half.bound(1, 0));
    CHECK(fiber(eg, {q(0)}).bound(0, 1) == q(0));
    auto empty = fiber(family(segment(), 2, {}), {q(1, 3)});
    CHECK_FALSE(empty.bound(0, 1));
    CHECK_FALSE(empty.bound(1, 0));
    CHECK_THROWS_AS(fiber(eg, {q(2)}), InvalidInput);
}

TEST_CASE("fiber commutation on random families")
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        auto fam = gen::random_family(rng);
        auto w = family_closure(fam);
        for (int s = 0; s < 10; ++s) {
            auto pt = gen::random_point(rng, *fam.base());
            CHECK(evaluate_closure(w, pt) == kleene_closure(fiber_quiver(fam, pt)));
        }
    }
}

TEST_CASE("is_projective_family")
{
    auto edge = [] { return std::vector<FamilyEdge>{{0, 1, -X()}}; };
    auto closed = is_projective_family(family(closed_half(), 2, edge()));
    CHECK(closed.kind == FamilyProjectivity::Kind::NotLowerFinite);
    REQUIRE(closed.unbounded);
    CHECK(closed.unbounded->piece == -X());
    CHECK(closed.unbounded->ray == IntVector{-1});
    CHECK(closed.unbounded->path == std::vector<int>{0});

    CHECK(is_projective_family(family(open_half(), 2, edge())).projective());
    auto eg = is_projective_family(fam_eg());
    CHECK(eg.projective());
    CHECK(eg.canonical.size() == 1);

    auto degenerate = is_projective_family(family(segment(), 2, {{0, 1, X()}, {1, 0, zero1()}}));
    CHECK(degenerate.kind == FamilyProjectivity::Kind::Degenerate);
    CHECK(degenerate.cycle);
}

TEST_CASE("change_of_basis")
{
    auto original = family(closed_half(), 2, {{0, 1, -X()}});
    auto trivial = change_of_basis(original, {zero1(), -X()});
    REQUIRE(trivial.edges.size() == 1);
    CHECK(trivial.edges[0].weight == zero1());
    auto r = is_projective_family(trivial);
    CHECK(r.projective());
    for (const auto& e : r.canonical) CHECK(e.weight == CPAFunction::constant(trivial.base(), 0));

    CHECK(change_of_basis(original, {zero1(), zero1()}).edges[0].weight == original.edges[0].weight);
    auto back = change_of_basis(trivial, {zero1(), X()});
    CHECK(back.edges[0].weight == original.edges[0].weight);
}

TEST_CASE("projectivity is invariant under change of basis on bounded bases")
{
    std::mt19937_64 rng(77);
    for (int t = 0; t < 40; ++t) {
        auto fam = gen::random_family(rng, 3);
        std::vector<AffineFunction> shifts;
        for (int i = 0; i < fam.n; ++i) shifts.push_back(gen::random_affine(rng, fam.dim()));
        auto moved = change_of_basis(fam, shifts);
        CHECK(is_projective_family(moved).kind == is_projective_family(fam).kind);
        std::vector<AffineFunction> inverse;
        for (const auto& s : shifts) inverse.push_back(-s);
        auto restored = change_of_basis(moved, inverse);
        for (std::size_t e = 0; e < fam.edges.size(); ++e) CHECK(restored.edges[e].weight == fam.edges[e].weight);
        // The closure transforms by the same shifts.
        auto w = family_closure(fam), wm = family_closure(moved);
        for (int i = 0; i < fam.n; ++i)
            for (int j = 0; j < fam.n; ++j) {
                if (w(i, j).is_bottom()) {
                    CHECK(wm(i, j).is_bottom());
                    continue;
                }
                auto shift = CPAFunction::affine(fam.base(), shifts[i] - shifts[j]);
                CHECK(wm(i, j) == cpa_add(w(i, j), shift));
            }
    }
}

TEST_CASE("vertical_hom_check")
{
    auto eg = fam_eg();
    CHECK(vertical_hom_check(eg, eg, {{{zero1(), 0}}, {{zero1(), 1}}}));

    auto original = family(closed_half(), 2, {{0, 1, -X()}});
    auto trivial = change_of_basis(original, {zero1(), -X()});
    CHECK(vertical_hom_check(original, trivial, {{{zero1(), 0}}, {{-X(), 1}}}));
    CHECK(vertical_hom_check(trivial, original, {{{zero1(), 0}}, {{X(), 1}}}));

    auto bad = vertical_hom_check(eg, eg, {{{zero1(), 0}}, {{zero1(), 0}}});
    CHECK_FALSE(bad);
    CHECK(bad.failing_edge >= 0);
    REQUIRE(bad.witness);
    CHECK(eg.base()->contains(*bad.witness));
}

TEST_CASE("is_projective_pomod dispatches on the pair")
{
    auto g = is_projective_pomod(group_quiver(2, {{0, 1, q(3)}, {1, 0, q(-5)}}));
    CHECK(g.kind == PomodVerdict::Kind::Projective);
    CHECK(g.group);
    auto bad = is_projective_pomod(group_quiver(2, {{0, 1, q(3)}, {1, 0, q(-2)}}));
    CHECK(bad.kind == PomodVerdict::Kind::Degenerate);
    auto closed = is_projective_pomod(family(closed_half(), 2, {{0, 1, -X()}}).to_quiver());
    CHECK(closed.kind == PomodVerdict::Kind::NotLowerFinite);
    CHECK(closed.family);
}
