#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "random_instances.hpp"
#include "tropmod/quiver.hpp"

using namespace tropmod;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

QuiverPresentation quiver(int n, std::vector<std::tuple<int, int, Rational>> edges)
{
    return group_quiver(n, edges);
}

using gen::oracle_edges;
using gen::random_quiver;

bool matches_oracle(const ClosureMatrix& c, const oracle::Matrix& m)
{
    for (int i = 0; i < c.size(); ++i)
        for (int j = 0; j < c.size(); ++j)
            if (c(i, j) != m[i][j]) return false;
    return true;
}

} // namespace

TEST_CASE("validation rejects trivial loops and bad weights")
{
    CHECK_THROWS_AS(quiver(1, {{0, 0, q(-1)}}), InvalidInput);
    CHECK_THROWS_AS(quiver(1, {{0, 0, q(0)}}), InvalidInput);
    CHECK_NOTHROW(quiver(1, {{0, 0, q(1)}}));
    CHECK_THROWS_AS(quiver(2, {{0, 2, q(1)}}), InvalidInput);
    CHECK_THROWS_AS(quiver(2, {{0, 1, q(1, 2)}}), InvalidInput);
    CHECK_NOTHROW(group_quiver(2, {{0, 1, q(1, 2)}}, GroupTag::fractions(2)));
}

TEST_CASE("kleene_closure")
{
    auto c = kleene_closure(quiver(2, {{0, 1, q(3)}, {1, 0, q(-5)}}));
    CHECK(c(0, 1) == q(3));
    CHECK(c(1, 0) == q(-5));
    CHECK(c(0, 0) == q(0));
    CHECK(c(1, 1) == q(0));

    try {
        kleene_closure(quiver(2, {{0, 1, q(3)}, {1, 0, q(-2)}}));
        FAIL("expected a degenerate quiver");
    } catch (const DegenerateQuiver& d) {
        CHECK(d.cycle().weight == q(1));
        CHECK(d.cycle().vertices.front() == d.cycle().vertices.back());
        CHECK(d.cycle().edges.size() == 2);
    }

    auto empty = kleene_closure(quiver(3, {}));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(empty(i, j) == (i == j ? Weight(q(0)) : Weight()));
}

TEST_CASE("is_nondegenerate")
{
    CHECK(is_nondegenerate(quiver(2, {{0, 1, q(3)}, {1, 0, q(-5)}})));
    auto bad = is_nondegenerate(quiver(2, {{0, 1, q(3)}, {1, 0, q(-2)}}));
    CHECK_FALSE(bad);
    REQUIRE(bad.witness);
    CHECK(bad.witness->weight == q(1));
    CHECK(is_nondegenerate(quiver(1, {})));
    CHECK_FALSE(is_nondegenerate(quiver(1, {{0, 0, q(2)}})));
}

TEST_CASE("closure matches the simple-path oracle on random quivers")
{
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 300; ++t) {
        auto qp = random_quiver(rng);
        auto edges = oracle_edges(qp);
        bool degenerate = oracle::has_positive_simple_cycle(qp.n, edges);
        CHECK(is_nondegenerate(qp).nondegenerate == !degenerate);
        if (degenerate) {
            CHECK_THROWS_AS(kleene_closure(qp), DegenerateQuiver);
            continue;
        }
        auto c = kleene_closure(qp);
        CHECK(matches_oracle(c, oracle::simple_path_maxima(qp.n, edges)));
        for (int i = 0; i < qp.n; ++i)
            for (int j = 0; j < qp.n; ++j) {
                if (c(i, j) && c(j, i)) CHECK(*c(i, j) + *c(j, i) <= 0);
                for (int k = 0; k < qp.n; ++k)
                    if (c(i, j) && c(j, k)) CHECK((c(i, k) && *c(i, k) >= *c(i, j) + *c(j, k)));
                if (c(i, j)) {
                    auto path = realizing_path(qp, c, i, j);
                    Rational w = 0;
                    int at = i;
                    for (int e : path) {
                        CHECK(qp.edges[e].src == at);
                        at = qp.edges[e].dst;
                        w += qp.group_weight(e);
                    }
                    CHECK(at == j);
                    CHECK(w == *c(i, j));
                }
            }
    }
}

TEST_CASE("leq_elements")
{
    auto c = kleene_closure(quiver(2, {{0, 1, q(3)}}));
    CHECK(leq_elements(c, {q(0), 0}, {q(0), 1}));
    CHECK_FALSE(leq_elements(c, {q(0), 1}, {q(0), 0}));
    CHECK(leq_elements(c, {q(7), 1}, {q(7), 1}));
    CHECK(leq_elements(c, {q(3), 0}, {q(0), 1}));
    CHECK_FALSE(leq_elements(c, {q(4), 0}, {q(0), 1}));
}

TEST_CASE("ideal_leq and ideal_join")
{
    auto c1 = kleene_closure(quiver(1, {}));
    CHECK(ideal_leq(c1, ModuleElement(c1, {{q(0), 0}}), ModuleElement(c1, {{q(1), 0}})));
    auto c = kleene_closure(quiver(2, {{0, 1, q(3)}}));
    ModuleElement f(c, {{q(0), 0}, {q(0), 1}}), g(c, {{q(0), 1}}), h(c, {{q(0), 0}});
    CHECK(ideal_leq(c, f, g));
    CHECK(f == g); // (0,0) is dominated by (0,1)
    CHECK_FALSE(ideal_leq(c, g, h));
    CHECK(ideal_join(c, g, h) == g);
    CHECK(ideal_shift(c, h, q(3)) == ModuleElement(c, {{q(3), 0}}));
}

TEST_CASE("module elements: join is the least upper bound and equality is antichain equality")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> cd(-4, 4);
    for (int t = 0; t < 60; ++t) {
        auto qp = random_quiver(rng, 4);
        if (!is_nondegenerate(qp)) continue;
        auto c = kleene_closure(qp);
        std::uniform_int_distribution<int> vd(0, qp.n - 1), kd(1, 3);
        auto rand_elem = [&] {
            std::vector<Generator> gens;
            int k = kd(rng);
            for (int i = 0; i < k; ++i) gens.push_back({q(cd(rng)), vd(rng)});
            return ModuleElement(c, gens);
        };
        for (int s = 0; s < 10; ++s) {
            auto f = rand_elem(), g = rand_elem(), h = rand_elem();
            auto fg = ideal_join(c, f, g);
            CHECK(ideal_leq(c, f, fg));
            CHECK(ideal_leq(c, g, fg));
            if (ideal_leq(c, f, h) && ideal_leq(c, g, h)) CHECK(ideal_leq(c, fg, h));
            CHECK((ideal_leq(c, f, g) && ideal_leq(c, g, f)) == (f == g));
            CHECK(ideal_join(c, f, f) == f);
        }
    }
}

TEST_CASE("canonical_quiver")
{
    auto c = kleene_closure(quiver(3, {{0, 1, q(3)}, {1, 2, q(1)}, {0, 2, q(4)}}));
    auto r = canonical_quiver(c);
    REQUIRE(r.edges.size() == 2);
    CHECK(kleene_closure(r) == c);
    auto c2 = kleene_closure(quiver(3, {{0, 1, q(3)}, {1, 2, q(1)}, {0, 2, q(5)}}));
    CHECK(canonical_quiver(c2).edges.size() == 3);
    CHECK(canonical_quiver(kleene_closure(quiver(3, {}))).edges.empty());

    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
        auto qp = random_quiver(rng);
        if (!is_nondegenerate(qp)) continue;
        auto cc = kleene_closure(qp);
        auto red = canonical_quiver(cc);
        CHECK(kleene_closure(red) == cc);
        // Minimal: dropping any edge changes the closure.
        for (std::size_t e = 0; e < red.edges.size(); ++e) {
            auto fewer = red;
            fewer.edges.erase(fewer.edges.begin() + static_cast<long>(e));
            CHECK_FALSE(kleene_closure(fewer) == cc);
        }
    }
}

TEST_CASE("order_dual")
{
    auto d = order_dual(quiver(2, {{0, 1, q(3)}}));
    REQUIRE(d.edges.size() == 1);
    CHECK(d.edges[0].src == 1);
    CHECK(d.edges[0].dst == 0);
    CHECK(d.group_weight(0) == q(3));
    CHECK(order_dual(quiver(0, {})).edges.empty());
    CHECK_THROWS_AS(order_dual(quiver(2, {{0, 1, q(3)}, {1, 0, q(-2)}})), DegenerateQuiver);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        auto qp = random_quiver(rng);
        if (!is_nondegenerate(qp)) continue;
        auto c = kleene_closure(qp);
        CHECK(kleene_closure(order_dual(qp)) == c.transpose());
        CHECK(kleene_closure(order_dual(order_dual(qp))) == c);
    }
}

TEST_CASE("is_projective_group_pomod")
{
    auto ok = is_projective_group_pomod(quiver(2, {{0, 1, q(3)}, {1, 0, q(-5)}}));
    CHECK(ok.projective);
    REQUIRE(ok.canonical);
    auto bad = is_projective_group_pomod(quiver(2, {{0, 1, q(3)}, {1, 0, q(-2)}}));
    CHECK_FALSE(bad.projective);
    REQUIRE(bad.cycle);
    CHECK(bad.cycle->weight == q(1));
}

TEST_CASE("check_module_hom")
{
    auto q2 = quiver(2, {{0, 1, q(3)}, {1, 0, q(-5)}});
    CHECK(check_module_hom(q2, q2, {{{q(0), 0}}, {{q(0), 1}}}));
    CHECK(check_module_hom(quiver(2, {}), quiver(1, {}), {{{q(0), 0}}, {{q(0), 0}}}));
    auto fail = check_module_hom(quiver(2, {{0, 1, q(3)}}), quiver(1, {}), {{{q(0), 0}}, {{q(0), 0}}});
    CHECK_FALSE(fail);
    CHECK(fail.failing_edge == 0);
    // A shifted image fixes it: x1 -> (0, y), x2 -> (3, y).
    CHECK(check_module_hom(quiver(2, {{0, 1, q(3)}}), quiver(1, {}), {{{q(0), 0}}, {{q(3), 0}}}));
}
