#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "qci/cayley.hpp"
#include "qci/quaternion_aut.hpp"

using namespace qci;

namespace {

ConnectionSet nnn_family_set(const GroupParams& p) {
    int n = p.n();
    return ConnectionSet::from_elements(
        {p.a_pow(1), p.a_pow(n - 1), p.b(),
         q_mul(p.a_pow(n / 2), p.b(), p), q_mul(p.a_pow(n), p.b(), p),
         q_mul(p.a_pow(3 * n / 2), p.b(), p)},
        p);
}

} // namespace

TEST_CASE("build basics") {
    GroupParams p(6);

    CayleyDigraph empty = build_cayley(p, ConnectionSet{});
    CHECK(empty.adj.arc_count() == 0);

    CHECK_THROWS_AS(build_cayley(p, ConnectionSet::from_elements({p.identity()}, p)),
                    IdentityInS);

    // The six-element family set: out-degree 6 everywhere.
    CayleyDigraph g = build_cayley(p, nnn_family_set(p));
    for (int v = 0; v < g.degree(); ++v) {
        CHECK(g.adj.out[v].count() == 6);
        CHECK(g.adj.in[v].count() == 6);
    }

    // S = {a, a^-1}: two disjoint 2n-cycles (the <a> side and the b side).
    ConnectionSet two_cycles =
        ConnectionSet::from_elements({p.a_pow(1), p.a_pow(-1)}, p);
    CayleyDigraph cyc = build_cayley(p, two_cycles);
    CHECK_FALSE(is_connected(cyc));
    // Component of the identity is exactly <a>.
    std::set<int> comp;
    std::vector<int> stack{0};
    comp.insert(0);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        cyc.adj.out[v].for_each([&](int u) {
            if (comp.insert(u).second) stack.push_back(u);
        });
    }
    CHECK(comp.size() == static_cast<size_t>(p.two_n()));
}

TEST_CASE("connectivity") {
    GroupParams p(6);
    CHECK(is_connected(build_cayley(
        p, ConnectionSet::from_elements({p.a_pow(1), p.b()}, p))));
    CHECK_FALSE(is_connected(build_cayley(
        p, ConnectionSet::from_elements({p.a_pow(1)}, p))));
    CHECK(is_connected(build_cayley(p, nnn_family_set(p))));
}

TEST_CASE("right multiplications are automorphisms") {
    // Exhaustive over all sets at n <= 3, sampled at n = 4.
    for (int n : {2, 3, 4}) {
        GroupParams p(n);
        ScanSpace space = make_scan_space(p, Mode::digraph);
        for (uint64_t idx = 0; idx < (uint64_t{1} << space.free_bits);
             idx += (n <= 3 ? 1 : 97)) {
            ConnectionSet s = ConnectionSet::from_mask(space.element_mask(idx), p);
            CayleyDigraph g = build_cayley(p, s);
            for (int gi = 0; gi < p.order(); ++gi) {
                Perm r = right_multiplication(p.element_at(gi), p);
                for (int v = 0; v < p.order(); ++v) {
                    VertexSet mapped;
                    g.adj.out[v].for_each([&](int u) { mapped.set(r[u]); });
                    REQUIRE(mapped == g.adj.out[r[v]]);
                }
            }
        }
    }
}

TEST_CASE("graph mode adjacency is symmetric") {
    GroupParams p(3);
    ScanSpace space = make_scan_space(p, Mode::graph);
    for (uint64_t idx = 0; idx < (uint64_t{1} << space.free_bits); ++idx) {
        ConnectionSet s = ConnectionSet::from_mask(space.element_mask(idx), p);
        REQUIRE(s.symmetric);
        REQUIRE(build_cayley(p, s).adj.is_symmetric());
    }
}

TEST_CASE("induced subdigraphs") {
    GroupParams p(6);
    CayleyDigraph g = build_cayley(p, nnn_family_set(p));

    // Induced on everything reproduces the digraph.
    VertexSet all;
    for (int v = 0; v < g.degree(); ++v) all.set(v);
    Digraph full = induced(g, all);
    CHECK(full.arc_count() == g.adj.arc_count());

    // K_{4,4} block: M a^0 against M b a^0 under S2 = Mb.
    std::vector<QElem> s2;
    for (const auto& e : nnn_family_set(p).members)
        if (e.has_b) s2.push_back(e);
    CayleyDigraph g2 = build_cayley(p, ConnectionSet::from_elements(s2, p));
    VertexSet ma, mba;
    for (int t = 0; t < 4; ++t) {
        QElem m = p.a_pow(3 * t); // <a^{n/2}> = <a^3>
        ma.set(p.index_of(m));
        mba.set(p.index_of(q_mul(m, p.b(), p)));
    }
    CHECK(induced_between(g2, ma, mba).arc_count() == 16);
    CHECK(induced_between(g2, mba, ma).arc_count() == 16);
    CHECK(induced(g2, ma).arc_count() == 0);

    // Every bipartite piece between <a^{n/2}> cosets of the two layers is
    // empty or complete (here: 0 or 16 arcs).
    for (int i = 0; i < p.two_n(); ++i)
        for (int j = 0; j < p.two_n(); ++j) {
            VertexSet x, y;
            for (int t = 0; t < 4; ++t) {
                x.set(p.index_of(q_mul(p.a_pow(3 * t), p.a_pow(i), p)));
                y.set(p.index_of(
                    q_mul(q_mul(p.a_pow(3 * t), p.b(), p), p.a_pow(j), p)));
            }
            uint64_t arcs = induced_between(g2, x, y).arc_count();
            REQUIRE((arcs == 0 || arcs == 16));
        }
}

TEST_CASE("scan spaces") {
    // Graph-mode free choices: one involution class + inverse pairs.
    GroupParams p2(2);
    CHECK(make_scan_space(p2, Mode::graph).free_bits == 4);   // 16 sets
    CHECK(make_scan_space(p2, Mode::digraph).free_bits == 7); // 128 sets

    GroupParams p3(3);
    CHECK(make_scan_space(p3, Mode::graph).free_bits == 6);
    CHECK(make_scan_space(p3, Mode::digraph).free_bits == 11);

    GroupParams p4(4);
    CHECK(make_scan_space(p4, Mode::digraph).free_bits == 15); // 32768 sets
    CHECK(make_scan_space(p4, Mode::graph).free_bits == 8);

    GroupParams p5(5);
    CHECK(make_scan_space(p5, Mode::graph).free_bits == 10);
    GroupParams p6(6);
    CHECK(make_scan_space(p6, Mode::graph).free_bits == 12);

    // Every streamed graph-mode set is inverse closed.
    ScanSpace space = make_scan_space(p3, Mode::graph);
    for (uint64_t idx = 0; idx < 64; ++idx) {
        ConnectionSet s = ConnectionSet::from_mask(space.element_mask(idx), p3);
        CHECK(s.symmetric);
    }
}

TEST_CASE("orbit dedup") {
    GroupParams p(2);
    std::vector<Perm> aut = full_automorphism_group(p).elements();

    // Representatives partition the space: orbit sizes over canonical
    // representatives sum to the full count, in both modes.
    for (Mode mode : {Mode::digraph, Mode::graph}) {
        uint64_t weighted = 0, reps = 0, total = 0;
        enumerate_connection_sets(p, mode, true, aut,
                                  [&](uint64_t, uint64_t w) {
                                      weighted += w;
                                      reps++;
                                  });
        enumerate_connection_sets(p, mode, false, aut,
                                  [&](uint64_t, uint64_t) { total++; });
        CHECK(weighted == total);
        CHECK(reps < total);
    }

    // Canonical representative is stable under re-canonicalization.
    enumerate_connection_sets(p, Mode::digraph, true, aut,
                              [&](uint64_t mask, uint64_t) {
                                  CHECK(canonical_mask(mask, aut) == mask);
                              });
}
