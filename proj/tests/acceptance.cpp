// Acceptance run: one PASS/FAIL line per criterion; exits non-zero on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "corpus.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"
#include "tropmod/certificate.hpp"
#include "tropmod/family.hpp"
#include "tropmod/semilattice.hpp"
#include "tropmod/weight_polyhedron.hpp"

using namespace tropmod;
using gen::q;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail_if(bool bad, const std::string& what)
    {
        if (bad && pass) {
            pass = false;
            detail = what;
        }
    }
};

Outcome birkhoff()
{
    Outcome r;
    int checked = 0;
    for (int n = 1; n <= 6; ++n)
        for (const auto& table : oracle::lattices_up_to_iso(n)) {
            ++checked;
            FinBModule mu(table, 0);
            bool projective = is_projective(mu).projective;
            bool distributive = oracle::distributive(table);
            auto prim = primitives(mu);
            std::vector<std::vector<bool>> order(prim.size(), std::vector<bool>(prim.size()));
            for (std::size_t a = 0; a < prim.size(); ++a)
                for (std::size_t b = 0; b < prim.size(); ++b) order[a][b] = mu.leq(prim[a], prim[b]);
            auto rebuilt = free_module_on_poset(FinitePoset(order)).module;
            bool reconstructs = oracle::isomorphic(rebuilt.table(), table);
            r.fail_if(projective != distributive || projective != reconstructs,
                      "disagreement on a lattice with " + std::to_string(n) + " elements");
        }
    r.detail = r.pass ? std::to_string(checked) + " semilattices, 0 disagreements" : r.detail;
    return r;
}

Outcome closure_oracle()
{
    Outcome r;
    std::mt19937_64 rng(1001);
    int degenerate = 0;
    for (int t = 0; t < 500; ++t) {
        auto qp = gen::random_quiver(rng);
        auto edges = gen::oracle_edges(qp);
        bool positive_cycle = oracle::has_positive_simple_cycle(qp.n, edges);
        r.fail_if(is_nondegenerate(qp).nondegenerate == positive_cycle, "degeneracy verdict mismatch");
        if (positive_cycle) {
            ++degenerate;
            continue;
        }
        auto c = kleene_closure(qp);
        auto best = oracle::simple_path_maxima(qp.n, edges);
        for (int i = 0; i < qp.n; ++i)
            for (int j = 0; j < qp.n; ++j) r.fail_if(c(i, j) != best[i][j], "closure entry mismatch");
    }
    if (r.pass) r.detail = "500 quivers (" + std::to_string(degenerate) + " degenerate)";
    return r;
}

Outcome duality_round_trip()
{
    Outcome r;
    std::mt19937_64 rng(2002);
    for (int t = 0; t < 200; ++t) {
        auto c = kleene_closure(gen::random_nondegenerate(rng));
        r.fail_if(!(pomod_of(polyhedron_of(c)) == c), "round trip changed a closure");
    }
    if (r.pass) r.detail = "200 closures";
    return r;
}

Outcome separation()
{
    Outcome r;
    std::mt19937_64 rng(2002);
    long pairs = 0, separated = 0;
    for (int t = 0; t < 200; ++t) {
        auto qp = gen::random_nondegenerate(rng);
        auto c = kleene_closure(qp);
        auto best = oracle::simple_path_maxima(qp.n, gen::oracle_edges(qp));
        for (int i = 0; i < qp.n; ++i)
            for (int j = 0; j < qp.n; ++j)
                for (int diff = -12; diff <= 12; ++diff) {
                    ++pairs;
                    Generator f{q(diff), i}, g{q(0), j};
                    bool holds = best[i][j] && q(diff) <= *best[i][j];
                    auto p = separate(c, f, g);
                    r.fail_if(p.has_value() == holds, "separate disagrees with the order");
                    if (!p) continue;
                    ++separated;
                    for (std::size_t e = 0; e < qp.edges.size(); ++e)
                        r.fail_if(qp.group_weight(e) + (*p)[qp.edges[e].src] > (*p)[qp.edges[e].dst],
                                  "separating point violates a constraint");
                    r.fail_if((*p)[j] != 0, "phi(G) is not 0");
                    r.fail_if(q(diff) + (*p)[i] <= 0, "phi(F) is not positive");
                }
    }
    if (r.pass) r.detail = std::to_string(pairs) + " generator pairs, " + std::to_string(separated) + " separated";
    return r;
}

Outcome family_fixture()
{
    Outcome r;
    auto base = interval(q(-1), q(1));
    auto x = AffineFunction::coordinate(1, 0), zero = AffineFunction::constant_fn(1, 0);
    FamilyPresentation fam{MonoidPairSpec::affine_pair(base), 2, {{0, 1, x}, {0, 1, -x}}};
    fam.validate();
    r.fail_if(formal_leq(fam, {zero, 0}, {zero, 1}), "formal_leq holds");
    r.fail_if(!leq_normalized(fam, {zero, 0}, {zero, 1}).holds, "leq_normalized fails");
    auto w = family_closure(fam);
    r.fail_if(!(w(0, 1) == CPAFunction(base, {x, -x})), "closure entry is not X v -X");
    r.fail_if(w(0, 1).pieces().size() != 2, "canonical form does not have two pieces");
    if (r.pass) r.detail = "formal false, normalized true, W(0,1) = X v -X";
    return r;
}

Outcome extension_fixture()
{
    Outcome r;
    auto x = AffineFunction::coordinate(1, 0), zero = AffineFunction::constant_fn(1, 0);
    std::vector<FamilyEdge> edge{{0, 1, -x}};
    FamilyPresentation closed{MonoidPairSpec::bounded_affine_pair(lower_halfline(q(0)), {{-1}}), 2, edge};
    FamilyPresentation open{MonoidPairSpec::affine_pair(lower_halfline(q(0))), 2, edge};
    closed.validate();
    open.validate();
    auto c = is_projective_family(closed);
    r.fail_if(c.kind != FamilyProjectivity::Kind::NotLowerFinite, "closed base is not rejected");
    r.fail_if(!c.unbounded || c.unbounded->ray != IntVector{-1} || !(c.unbounded->piece == -x),
              "missing unbounded-weight ray");
    r.fail_if(!is_projective_family(open).projective(), "open base is not projective");
    auto shifted = change_of_basis(closed, {zero, -x});
    r.fail_if(shifted.edges.size() != 1 || !(shifted.edges[0].weight == zero), "shifted weight is not 0");
    auto s = is_projective_family(shifted);
    r.fail_if(!s.projective(), "shifted family is not projective");
    for (const auto& e : s.canonical)
        r.fail_if(!(e.weight == CPAFunction::constant(shifted.base(), 0)), "canonical quiver is not trivial");
    if (r.pass) r.detail = "closed: ray [-1]; open: projective; shifted: trivial";
    return r;
}

std::vector<std::vector<bool>> opposite_product(const std::vector<std::vector<bool>>& a,
                                                const std::vector<std::vector<bool>>& b)
{
    int n = static_cast<int>(a.size()), m = static_cast<int>(b.size());
    std::vector<std::vector<bool>> out(n * m, std::vector<bool>(n * m));
    for (int i = 0; i < n * m; ++i)
        for (int j = 0; j < n * m; ++j) out[i][j] = a[j / m][i / m] && b[i % m][j % m];
    return out;
}

Outcome hom_count()
{
    Outcome r;
    auto c2 = FinitePoset::chain(2);
    auto size = hom_module(c2, c2).module.module.size();
    r.fail_if(size != 6, "chain hom has " + std::to_string(size) + " elements");
    r.fail_if(oracle::count_join_maps(c2.relation(), c2.relation()) != 6, "brute force does not count 6");
    int pairs = 0;
    for (int n1 = 0; n1 <= 3; ++n1)
        for (int n2 = 0; n2 <= 3; ++n2)
            for (const auto& p1 : oracle::labelled_posets(n1))
                for (const auto& p2 : oracle::labelled_posets(n2)) {
                    ++pairs;
                    auto h = hom_module(FinitePoset(p1), FinitePoset(p2)).module.module.size();
                    auto expected = static_cast<long>(oracle::lower_sets(opposite_product(p1, p2)).size());
                    r.fail_if(h != expected, "hom size differs from the lower-set count");
                    r.fail_if(h != oracle::count_join_maps(p1, p2), "hom size differs from brute force");
                }
    if (r.pass) r.detail = "chain: 6; " + std::to_string(pairs) + " poset pairs agree";
    return r;
}

Outcome fiber_commutation()
{
    Outcome r;
    std::mt19937_64 rng(3003);
    for (int t = 0; t < 50; ++t) {
        auto fam = gen::random_family(rng);
        auto w = family_closure(fam);
        for (int s = 0; s < 20; ++s) {
            auto pt = gen::random_point(rng, *fam.base());
            r.fail_if(!(evaluate_closure(w, pt) == kleene_closure(fiber_quiver(fam, pt))), "fiber mismatch");
        }
    }
    if (r.pass) r.detail = "50 families x 20 points";
    return r;
}

Outcome cpa_laws()
{
    Outcome r;
    std::mt19937_64 rng(4004);
    for (int t = 0; t < 300; ++t) {
        auto dom = gen::random_polytope(rng);
        auto f = gen::random_cpa(rng, dom), g = gen::random_cpa(rng, dom), h = gen::random_cpa(rng, dom);
        r.fail_if(!(cpa_join(cpa_join(f, g), h) == cpa_join(f, cpa_join(g, h))), "join not associative");
        r.fail_if(!(cpa_add(cpa_add(f, g), h) == cpa_add(f, cpa_add(g, h))), "addition not associative");
        r.fail_if(!(cpa_add(f, cpa_join(g, h)) == cpa_join(cpa_add(f, g), cpa_add(f, h))), "not distributive");
        auto rf = cpa_reduce(f);
        r.fail_if(cpa_reduce(rf).pieces() != rf.pieces(), "reduce not idempotent");
        auto shuffled = f.pieces();
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        r.fail_if(cpa_reduce(CPAFunction(dom, shuffled)).pieces() != rf.pieces(), "canonical form depends on order");
        auto a = gen::random_affine(rng, dom->dim());
        auto zero = AffineFunction::constant_fn(dom->dim(), 0);
        auto abs_sum = cpa_add(CPAFunction(dom, {a, zero}), CPAFunction(dom, {-a, zero}));
        r.fail_if(!(abs_sum == cpa_reduce(CPAFunction(dom, {a, -a}))), "absolute value identity fails");
    }
    if (r.pass) r.detail = "300 triples";
    return r;
}

Outcome self_verification()
{
    Outcome r;
    int fixtures = 0, rejected_inputs = 0, mutations = 0;
    for (const auto& fx : corpus::load()) {
        if (fx.expected_exit == 2) {
            bool threw = false;
            try {
                run(fx.request);
            } catch (const InvalidInput&) {
                threw = true;
            }
            r.fail_if(!threw, fx.name + " was accepted");
            ++rejected_inputs;
            continue;
        }
        ++fixtures;
        auto cert = run(fx.request);
        r.fail_if(cert.verdict != fx.expected_verdict, fx.name + ": unexpected verdict " + cert.verdict);
        r.fail_if(!verify(cert, fx.request), fx.name + " does not verify");
        int tried = 0;
        r.fail_if(corpus::surviving_mutations(cert, fx.request, &tried) != 0, fx.name + ": a tampered field verifies");
        mutations += tried;
    }
    if (r.pass)
        r.detail = std::to_string(fixtures) + " certificates, " + std::to_string(mutations) + " tampered copies rejected, " +
                   std::to_string(rejected_inputs) + " malformed inputs rejected";
    return r;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"birkhoff equivalence", birkhoff},
        {"closure oracle", closure_oracle},
        {"duality round trip", duality_round_trip},
        {"separation", separation},
        {"two-piece family fixture", family_fixture},
        {"partial compactification fixture", extension_fixture},
        {"hom count", hom_count},
        {"fiber commutation", fiber_commutation},
        {"cpa semiring laws", cpa_laws},
        {"certificate self-verification", self_verification},
    };
    int failures = 0, index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = check();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!out.pass) ++failures;
        std::printf("%s %2d %s: %s (%.2fs)\n", out.pass ? "PASS" : "FAIL", index, name.c_str(), out.detail.c_str(), secs);
    }
    return failures == 0 ? 0 : 1;
}
