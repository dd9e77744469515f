#include <arcbound/core.hpp>
#include <arcbound/generate.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace arcbound;

TEST_CASE("vertex set basics") {
    VertexSet s(130);
    CHECK(s.empty());
    s.add(0);
    s.add(64);
    s.add(129);
    CHECK(s.count() == 3);
    CHECK(s.first() == 0);
    CHECK(s.next(0) == 64);
    CHECK(s.next(64) == 129);
    CHECK(s.next(129) == -1);
    CHECK(s.test(64));
    s.remove(64);
    CHECK(!s.test(64));
    CHECK(s.members() == std::vector<int>{0, 129});

    VertexSet a = VertexSet::of(10, {1, 3, 5});
    VertexSet b = VertexSet::of(10, {3, 5, 7});
    CHECK((a & b) == VertexSet::of(10, {3, 5}));
    CHECK((a | b) == VertexSet::of(10, {1, 3, 5, 7}));
    CHECK((a - b) == VertexSet::of(10, {1}));
    CHECK(a.intersects(b));
    CHECK(VertexSet::all(10).contains_all(a));
    CHECK(!a.contains_all(b));
    CHECK(VertexSet::all(3).members() == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(a.add(10), contract_error);
}

TEST_CASE("vertex set lex order prefers smaller first member") {
    VertexSet a = VertexSet::of(8, {0, 7});
    VertexSet b = VertexSet::of(8, {1, 2});
    CHECK(a.lex_less(b));
    CHECK(!b.lex_less(a));
    CHECK(!a.lex_less(a));
}

TEST_CASE("oriented graph rejects loops and digons") {
    OrientedGraph d(3);
    d.add_arc(0, 1);
    CHECK_THROWS_AS(d.add_arc(1, 0), contract_error);
    CHECK_THROWS_AS(d.add_arc(2, 2), contract_error);
    CHECK_THROWS_AS(d.add_arc(0, 3), contract_error);
    d.add_arc(0, 1);  // idempotent re-add
    CHECK(d.arc_count() == 1);
    CHECK_THROWS_AS(OrientedGraph(2, {{0, 1}, {1, 0}}), contract_error);
}

TEST_CASE("tournament recognition") {
    CHECK(transitive_tournament(5).is_tournament());
    CHECK(qr_tournament(7).is_tournament());
    CHECK(!directed_cycle(4).is_tournament());
    OrientedGraph d = directed_cycle(3);
    CHECK(d.is_tournament());  // C3 happens to be one
    CHECK(d.is_tournament_on(VertexSet::all(3)));
    OrientedGraph e(4, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(e.is_tournament_on(VertexSet::of(4, {0, 1, 2})));
    CHECK(!e.is_tournament_on(VertexSet::all(4)));
}

TEST_CASE("induced and reversed") {
    OrientedGraph d = qr_tournament(7);
    VertexSet scope = VertexSet::of(7, {0, 1, 3});
    OrientedGraph sub = d.induced(scope);
    CHECK(sub.arc_count() == 3);
    CHECK(sub.has_arc(0, 1));
    CHECK(sub.has_arc(1, 3));
    CHECK(sub.has_arc(3, 0));
    CHECK(!sub.has_arc(0, 2));
    OrientedGraph r = d.reversed();
    for (const auto& e : d.arcs()) CHECK(r.has_arc(e.to, e.from));
    CHECK(r.arc_count() == d.arc_count());
}

TEST_CASE("arc neighborhood of the first qr7 arc") {
    OrientedGraph t = qr_tournament(7);
    // Third corners of triangles through 0 -> 1: exactly 3 and 5.
    VertexSet n = arc_neighborhood(t, {0, 1});
    CHECK(n == VertexSet::of(7, {3, 5}));
    CHECK_THROWS_AS(arc_neighborhood(t, {1, 0}), contract_error);
}

TEST_CASE("arc neighborhood matches triangle scan on random instances") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        OrientedGraph d = random_oriented(12, 0.6, seed);
        for (const auto& e : d.arcs()) {
            auto expect = oracle::arc_neighborhood(d, e.from, e.to);
            CHECK(arc_neighborhood(d, e).members() == expect);
        }
    }
}

TEST_CASE("every arc of qr7 has exactly one triangle corner in excess") {
    // QR tournaments are arc-regular; each arc of qr7 sees two corners.
    OrientedGraph t = qr_tournament(7);
    for (const auto& e : t.arcs()) CHECK(arc_neighborhood(t, e).count() == 2);
}

TEST_CASE("nonedge and punch neighborhoods") {
    OrientedGraph d(5, {{0, 1}, {1, 2}, {2, 0}, {3, 1}});
    CHECK(nonedge_neighborhood(d, 4) == VertexSet::of(5, {0, 1, 2, 3}));
    CHECK(nonedge_neighborhood(d, 0) == VertexSet::of(5, {3, 4}));
    // {0,1}: arcs out of the pair reach {2}, arcs into it leave {2,3}.
    VertexSet s = VertexSet::of(5, {0, 1});
    CHECK(punch_neighborhood(d, s) == VertexSet::of(5, {2}));
}

TEST_CASE("acyclicity matches dfs oracle") {
    CHECK(is_acyclic(transitive_tournament(6)));
    CHECK(!is_acyclic(directed_cycle(3)));
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        OrientedGraph d = random_oriented(10, 0.4, seed);
        CHECK(is_acyclic(d) == !oracle::has_cycle(d, VertexSet::all(10)));
        VertexSet half = VertexSet::of(10, {0, 2, 4, 6, 8});
        CHECK(is_acyclic(d, half) == !oracle::has_cycle(d, half));
    }
}

TEST_CASE("scc decomposition is a topologically ordered partition") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        OrientedGraph d = random_oriented(14, 0.3, seed);
        auto parts = scc_decompose(d);
        VertexSet all(14);
        for (const auto& p : parts) {
            CHECK(!p.empty());
            CHECK(!all.intersects(p));
            CHECK(strongly_connected(d, p));
            all |= p;
        }
        CHECK(all == VertexSet::all(14));
        // No arc may run from a later block to an earlier one.
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                for (int v = parts[j].first(); v != -1; v = parts[j].next(v))
                    CHECK(!(d.out(v) & parts[i]).count());
        // Merging any two blocks must break strong connectivity of the pair.
        for (std::size_t i = 0; i + 1 < parts.size(); ++i)
            CHECK(!strongly_connected(d, parts[i] | parts[i + 1]));
    }
}

TEST_CASE("scc of a cycle is the whole vertex set") {
    auto parts = scc_decompose(directed_cycle(5));
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == VertexSet::all(5));
    auto tparts = scc_decompose(transitive_tournament(4));
    REQUIRE(tparts.size() == 4);
    // Topological order of a transitive tournament is the id order.
    for (int i = 0; i < 4; ++i) CHECK(tparts[i] == VertexSet::of(4, {i}));
}

TEST_CASE("independence number matches subset oracle") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        OrientedGraph d = random_oriented(12, 0.35, seed);
        auto r = independence_number(d);
        CHECK(r.exact);
        CHECK(r.value == oracle::independence_number(d));
        // Witness must actually be independent.
        auto vs = r.witness.members();
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) CHECK(!d.adjacent(vs[i], vs[j]));
    }
    CHECK(independence_number(qr_tournament(7)).value == 1);
    CHECK(independence_number(directed_cycle(5)).value == 2);
}

TEST_CASE("independence falls back to a greedy witness over budget") {
    OrientedGraph d = random_oriented(30, 0.3, 99);
    auto r = independence_number(d, VertexSet::all(30), 10);
    CHECK(!r.exact);
    CHECK(r.value >= 1);
    auto vs = r.witness.members();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) CHECK(!d.adjacent(vs[i], vs[j]));
}

TEST_CASE("generators are deterministic and well formed") {
    OrientedGraph a = random_tournament(10, 42);
    OrientedGraph b = random_tournament(10, 42);
    CHECK(a.arcs() == b.arcs());
    CHECK(a.is_tournament());
    OrientedGraph c = random_tournament(10, 43);
    CHECK(a.arcs() != c.arcs());
}
