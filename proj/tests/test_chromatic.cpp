#include <arcbound/chromatic.hpp>
#include <arcbound/generate.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace arcbound;

TEST_CASE("dichromatic number of tiny named instances") {
    // Acyclic digraphs need one class, the directed triangle needs two.
    CHECK(dichromatic_exact(transitive_tournament(6)).number == 1);
    auto c3 = dichromatic_exact(directed_cycle(3));
    CHECK(c3.number == 2);
    CHECK(verify_coloring(directed_cycle(3), c3.witness));
    // The solver walks ids ascending and opens classes lazily, so the
    // witness for the triangle is pinned.
    CHECK(c3.witness.color == std::vector<int>{0, 0, 1});
    CHECK(dichromatic_exact(OrientedGraph(0)).number == 0);
    CHECK(dichromatic_exact(directed_cycle(9)).number == 2);
}

TEST_CASE("dichromatic number of qr7 is three") {
    OrientedGraph t = qr_tournament(7);
    auto r = dichromatic_exact(t);
    CHECK(r.number == oracle::dichromatic_number(t));
    CHECK(r.number == 3);
    CHECK(verify_coloring(t, r.witness));
    CHECK(r.witness.color_count == 3);
}

TEST_CASE("dichromatic exact agrees with partition oracle") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        OrientedGraph d = random_oriented(8, 0.6, seed);
        auto r = dichromatic_exact(d);
        CHECK(r.number == oracle::dichromatic_number(d));
        CHECK(verify_coloring(d, r.witness));
        CHECK(r.witness.color_count == r.number);
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        OrientedGraph t = random_tournament(7, seed);
        VertexSet scope = VertexSet::of(7, {0, 1, 2, 4, 5, 6});
        auto r = dichromatic_exact(t, scope);
        CHECK(r.number == oracle::dichromatic_number(t, scope));
        CHECK(verify_coloring(t, r.witness, scope));
    }
}

TEST_CASE("dichromatic exact over budget raises with a greedy bound") {
    OrientedGraph t = random_tournament(30, 5);
    try {
        dichromatic_exact(t, VertexSet::all(30), 10);
        FAIL("expected budget_error");
    } catch (const budget_error& e) {
        Coloring g = dichromatic_greedy(t);
        CHECK(e.greedy_bound == g.color_count);
        CHECK(e.greedy_bound >= 1);
    }
}

TEST_CASE("greedy colorings are always valid and at least exact size") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        OrientedGraph d = random_oriented(9, 0.5, seed);
        Coloring g = dichromatic_greedy(d);
        CHECK(verify_coloring(d, g));
        CHECK(g.color_count >= dichromatic_exact(d).number);
    }
}

TEST_CASE("verify rejects a cyclic class and incomplete domains") {
    OrientedGraph c3 = directed_cycle(3);
    Coloring all_one(3);
    all_one.set(0, 0);
    all_one.set(1, 0);
    all_one.set(2, 0);
    CHECK(!verify_coloring(c3, all_one));
    Coloring partial(3);
    partial.set(0, 0);
    CHECK_THROWS_AS(verify_coloring(c3, partial), incomplete_coloring_error);
    CHECK(verify_coloring(c3, partial, VertexSet::of(3, {0})));
}

TEST_CASE("coloring helpers") {
    Coloring c(5);
    c.set(0, 7);
    c.set(2, 7);
    c.set(3, 2);
    c.recount();
    CHECK(c.color_count == 2);
    CHECK(c.span() == 8);
    CHECK(c.domain() == VertexSet::of(5, {0, 2, 3}));
    CHECK(c.covers(VertexSet::of(5, {0, 3})));
    CHECK(!c.covers(VertexSet::of(5, {0, 1})));
    c.compact();
    CHECK(c.color == std::vector<int>{0, -1, 0, 1, -1});
    CHECK(c.span() == 2);

    Coloring dst(5);
    dst.set(0, 3);
    Coloring src(5);
    src.set(0, 0);
    src.set(1, 1);
    dst.absorb_shifted(src, VertexSet::of(5, {0, 1}), 10);
    CHECK(dst.color[0] == 3);   // existing assignment wins
    CHECK(dst.color[1] == 11);  // shifted copy
    CHECK_THROWS_AS(dst.absorb_shifted(src, VertexSet::of(5, {4}), 0), contract_error);
}

TEST_CASE("blowups preserve the dichromatic number of small bases") {
    // Copies of a vertex form an independent set and can share its color.
    OrientedGraph base = directed_cycle(3);
    OrientedGraph twice = blowup_uniform(base, 2);
    CHECK(twice.n() == 6);
    CHECK(dichromatic_exact(twice).number == 2);
    CHECK(oracle::dichromatic_number(twice) == 2);
    OrientedGraph qr2 = blowup_uniform(qr_tournament(7), 2);
    CHECK(dichromatic_exact(qr2, VertexSet::all(14), 14).number == 3);
}

TEST_CASE("undirected chromatic and clique numbers") {
    UndirectedGraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(graph_chromatic_exact(k4, VertexSet::all(4)).number == 4);
    CHECK(graph_clique_exact(k4, VertexSet::all(4)).value == 4);
    UndirectedGraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(graph_chromatic_exact(c5, VertexSet::all(5)).number == 3);
    CHECK(graph_clique_exact(c5, VertexSet::all(5)).value == 2);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        OrientedGraph d = random_oriented(9, 0.5, seed);
        UndirectedGraph g = underlying_graph(d);
        auto r = graph_chromatic_exact(g, VertexSet::all(9));
        CHECK(r.number == oracle::chromatic_number(g));
        CHECK(verify_graph_coloring(g, r.color, VertexSet::all(9)));
        CHECK(graph_clique_exact(g, VertexSet::all(9)).value == oracle::clique_number(g, VertexSet::all(9)));
    }
}

TEST_CASE("graph components are ordered by smallest member") {
    UndirectedGraph g(7, {{0, 3}, {1, 2}, {4, 5}});
    auto comps = g.components(VertexSet::all(7));
    REQUIRE(comps.size() == 4);
    CHECK(comps[0] == VertexSet::of(7, {0, 3}));
    CHECK(comps[1] == VertexSet::of(7, {1, 2}));
    CHECK(comps[2] == VertexSet::of(7, {4, 5}));
    CHECK(comps[3] == VertexSet::of(7, {6}));
}
