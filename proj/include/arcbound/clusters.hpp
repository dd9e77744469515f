#pragma once

// Cluster search (small strongly connected witnesses of high dichromatic
// number), dominating/absorbing sets, the cluster-or-domination dichotomy,
// jewel chains, and tournament Hamilton cycles.

#include "chromatic.hpp"
#include "core.hpp"

#include <deque>
#include <optional>

namespace arcbound {

// Strongly connected S with dichromatic number >= k and |S| <= ell.
struct Cluster {
    VertexSet members;
    int k = 0;
    int ell = 0;
};

struct SetSearchResult {
    VertexSet set;
    bool exact = true;
};

namespace detail {

// Exact minimum dominating set by iterative deepening. Branches on an
// undominated vertex with the fewest potential dominators; the coverage
// bound prunes branches that cannot finish in the remaining picks.
inline bool dom_dfs(const std::vector<VertexSet>& covers, const VertexSet& scope,
                    VertexSet undominated, VertexSet chosen, int remaining, VertexSet& out) {
    if (undominated.empty()) {
        out = chosen;
        return true;
    }
    if (remaining == 0) return false;
    int max_cover = 0;
    for (int u = scope.first(); u != -1; u = scope.next(u))
        max_cover = std::max(max_cover, (covers[u] & undominated).count());
    if ((long long)max_cover * remaining < undominated.count()) return false;

    int pick = -1, fewest = -1;
    for (int w = undominated.first(); w != -1; w = undominated.next(w)) {
        int c = 0;
        for (int u = scope.first(); u != -1; u = scope.next(u))
            if (covers[u].test(w)) ++c;
        if (fewest == -1 || c < fewest) {
            fewest = c;
            pick = w;
        }
    }
    if (fewest == 0) return false;
    // Candidates ordered by coverage of what is left, ties by id.
    std::vector<int> cands;
    for (int u = scope.first(); u != -1; u = scope.next(u))
        if (covers[u].test(pick)) cands.push_back(u);
    std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
        return (covers[a] & undominated).count() > (covers[b] & undominated).count();
    });
    for (int u : cands) {
        VertexSet next_chosen = chosen;
        next_chosen.add(u);
        if (dom_dfs(covers, scope, undominated - covers[u], next_chosen, remaining - 1, out))
            return true;
    }
    return false;
}

inline SetSearchResult min_cover_set(const std::vector<VertexSet>& covers, const VertexSet& scope,
                                     int exact_limit) {
    SetSearchResult r;
    r.set = VertexSet(scope.universe());
    if (scope.empty()) return r;
    if (scope.count() > exact_limit) {
        // Greedy: max new coverage, ties by id.
        VertexSet undominated = scope;
        while (!undominated.empty()) {
            int pick = -1, best = -1;
            for (int u = scope.first(); u != -1; u = scope.next(u)) {
                int c = (covers[u] & undominated).count();
                if (c > best) {
                    best = c;
                    pick = u;
                }
            }
            if (best <= 0) throw contract_error("cover search: uncoverable vertex");
            r.set.add(pick);
            undominated -= covers[pick];
        }
        r.exact = false;
        return r;
    }
    for (int size = 1;; ++size) {
        VertexSet out(scope.universe());
        if (dom_dfs(covers, scope, scope, VertexSet(scope.universe()), size, out)) {
            r.set = out;
            return r;
        }
        if (size >= scope.count())
            throw contract_error("cover search failed to terminate");
    }
}

}  // namespace detail

// Smallest set S with an arc into every vertex of scope \ S (exact up to
// exact_limit scope vertices, greedy beyond).
inline SetSearchResult dominating_set(const OrientedGraph& d, const VertexSet& scope,
                                      int exact_limit = 26) {
    std::vector<VertexSet> covers(d.n(), VertexSet(d.n()));
    for (int u = scope.first(); u != -1; u = scope.next(u)) {
        covers[u] = d.out(u) & scope;
        covers[u].add(u);  // membership dominates
    }
    return detail::min_cover_set(covers, scope, exact_limit);
}

// Smallest set S with an arc from every vertex of scope \ S into S.
inline SetSearchResult absorbing_set(const OrientedGraph& d, const VertexSet& scope,
                                     int exact_limit = 26) {
    std::vector<VertexSet> covers(d.n(), VertexSet(d.n()));
    for (int u = scope.first(); u != -1; u = scope.next(u)) {
        covers[u] = d.in(u) & scope;
        covers[u].add(u);
    }
    return detail::min_cover_set(covers, scope, exact_limit);
}

// Shortest directed cycle via BFS from every start vertex; empty when
// acyclic. Ties break toward the smallest start id, then BFS order.
inline std::vector<int> shortest_cycle(const OrientedGraph& d, const VertexSet& scope) {
    std::vector<int> best;
    for (int s = scope.first(); s != -1; s = scope.next(s)) {
        std::vector<int> parent(d.n(), -1), dist(d.n(), -1);
        std::vector<int> queue{s};
        dist[s] = 0;
        int closing = -1;
        for (std::size_t head = 0; head < queue.size() && closing == -1; ++head) {
            int x = queue[head];
            if (!best.empty() && dist[x] + 1 >= int(best.size())) break;
            VertexSet succ = d.out(x) & scope;
            for (int w = succ.first(); w != -1; w = succ.next(w)) {
                if (w == s) {
                    closing = x;
                    break;
                }
                if (dist[w] != -1) continue;
                dist[w] = dist[x] + 1;
                parent[w] = x;
                queue.push_back(w);
            }
        }
        if (closing == -1) continue;
        std::vector<int> cyc;
        for (int x = closing; x != -1; x = parent[x]) cyc.push_back(x);
        std::reverse(cyc.begin(), cyc.end());
        // cyc = s..closing after reversal only if s had parent -1; it does.
        if (best.empty() || cyc.size() < best.size()) best = cyc;
    }
    return best;
}

inline std::vector<int> shortest_cycle(const OrientedGraph& d) {
    return shortest_cycle(d, VertexSet::all(d.n()));
}

// Girth-based witness for the domination bound: a digraph whose domination
// number exceeds its independence number carries a short cycle, so the
// shortest cycle is the object tests compare against 2*alpha + 1.
inline std::vector<int> short_cycle_if_undominated(const OrientedGraph& d,
                                                   const VertexSet& scope) {
    return shortest_cycle(d, scope);
}

inline std::vector<int> short_cycle_if_undominated(const OrientedGraph& d) {
    return shortest_cycle(d);
}

enum class SearchStatus { found, proven_absent, budget_exhausted };

struct ClusterSearchResult {
    SearchStatus status = SearchStatus::proven_absent;
    std::optional<Cluster> cluster;
    long long nodes = 0;
};

namespace detail {

struct ClusterSearch {
    const OrientedGraph& d;
    const VertexSet& scope;
    int k, ell;
    long long budget;
    std::vector<VertexSet> und;
    VertexSet low;  // vertices <= current anchor, barred from extension
    ClusterSearchResult result;

    ClusterSearch(const OrientedGraph& d, const VertexSet& scope, int k, int ell,
                  long long budget)
        : d(d), scope(scope), k(k), ell(ell), budget(budget), und(und_rows(d)),
          low(d.n()) {}

    // Returns true to stop the whole search (found or out of budget).
    bool visit(const VertexSet& s) {
        if (++result.nodes > budget) {
            result.status = SearchStatus::budget_exhausted;
            return true;
        }
        if (s.count() < 2 * k - 1) return false;
        if (!strongly_connected(d, s)) return false;
        // Greedy upper bound below k already rules the set out.
        if (dichromatic_greedy(d, s).color_count < k) return false;
        if (dichromatic_exact(d, s, ell).number < k) return false;
        result.status = SearchStatus::found;
        result.cluster = Cluster{s, k, ell};
        return true;
    }

    // Connected-subset enumeration anchored at the minimum member: extend
    // with the smallest frontier vertex, branching include/exclude, so each
    // connected subset of the anchor's component is visited exactly once.
    bool expand(VertexSet s, VertexSet frontier, VertexSet excluded) {
        if (s.count() >= ell) return false;
        int v = frontier.first();
        if (v == -1) return false;
        frontier.remove(v);
        // Include v.
        VertexSet s2 = s;
        s2.add(v);
        if (visit(s2)) return true;
        VertexSet f2 = frontier | ((und[v] & scope) - s2 - excluded - low);
        if (expand(s2, f2, excluded)) return true;
        // Exclude v.
        excluded.add(v);
        return expand(s, frontier, excluded);
    }

    void run() {
        for (int a = scope.first(); a != -1; a = scope.next(a)) {
            low.add(a);  // anchors ascend, so low = {0..a} within scope
            VertexSet s(d.n());
            s.add(a);
            if (visit(s)) return;
            VertexSet frontier = (und[a] & scope) - low;
            if (expand(s, frontier, VertexSet(d.n()))) return;
        }
        result.status = SearchStatus::proven_absent;
    }
};

}  // namespace detail

// Searches d[scope] for a (k, ell)-cluster. k = 1 is any vertex; k = 2 is
// complete via the shortest cycle (a 2-cluster of size <= ell exists iff
// the girth is <= ell); k >= 3 enumerates connected subsets up to the node
// budget. Sets of fewer than 2k-1 vertices can never reach k classes.
inline ClusterSearchResult find_cluster(const OrientedGraph& d, const VertexSet& scope, int k,
                                        int ell, long long node_budget = 200000) {
    if (k < 1) throw contract_error("find_cluster needs k >= 1");
    ClusterSearchResult r;
    if (ell < 2 * k - 1 || scope.empty()) {
        r.status = SearchStatus::proven_absent;
        return r;
    }
    if (k == 1) {
        VertexSet s(d.n());
        s.add(scope.first());
        r.status = SearchStatus::found;
        r.cluster = Cluster{s, 1, ell};
        r.nodes = 1;
        return r;
    }
    if (k == 2) {
        auto cyc = shortest_cycle(d, scope);
        r.nodes = 1;
        if (cyc.empty() || int(cyc.size()) > ell) {
            r.status = SearchStatus::proven_absent;
            return r;
        }
        VertexSet s(d.n());
        for (int v : cyc) s.add(v);
        r.status = SearchStatus::found;
        r.cluster = Cluster{s, 2, ell};
        return r;
    }
    detail::ClusterSearch search(d, scope, k, ell, node_budget);
    search.run();
    return search.result;
}

inline ClusterSearchResult find_cluster(const OrientedGraph& d, int k, int ell,
                                        long long node_budget = 200000) {
    return find_cluster(d, VertexSet::all(d.n()), k, ell, node_budget);
}

struct DominationPair {
    SetSearchResult dominating;
    SetSearchResult absorbing;
};

struct ClusterOrDomination {
    std::optional<Cluster> cluster;
    std::optional<DominationPair> pair;
    // Search ran to completion; absence of a cluster is then proven for
    // d[scope] at this (k, ell), not a budget artifact.
    bool exhaustive = false;
    long long nodes = 0;
};

// The dichotomy driver: either a (k, ell)-cluster or a dominating and an
// absorbing set. The returned sets may exceed the theory's size target when
// the cluster search was inconclusive; callers read `exhaustive`.
inline ClusterOrDomination cluster_or_domination(const OrientedGraph& d, const VertexSet& scope,
                                                 int k, int ell, long long node_budget = 200000,
                                                 int dom_exact_limit = 26) {
    ClusterOrDomination r;
    auto cs = find_cluster(d, scope, k, ell, node_budget);
    r.nodes = cs.nodes;
    if (cs.status == SearchStatus::found) {
        r.cluster = cs.cluster;
        r.exhaustive = true;
        return r;
    }
    r.exhaustive = (cs.status == SearchStatus::proven_absent);
    r.pair = DominationPair{dominating_set(d, scope, dom_exact_limit),
                            absorbing_set(d, scope, dom_exact_limit)};
    return r;
}

// Hamilton cycle of a strongly connected tournament restricted to scope,
// by backtracking in ascending neighbor order from the smallest vertex.
// Every strong tournament has one; failure means the precondition broke.
inline std::vector<int> hamilton_cycle(const OrientedGraph& t, const VertexSet& scope) {
    const int m = scope.count();
    if (m == 0) throw contract_error("hamilton_cycle on empty scope");
    if (m == 1) return {scope.first()};
    int start = scope.first();
    std::vector<int> path{start};
    VertexSet visited(t.n());
    visited.add(start);
    auto dfs = [&](auto&& self) -> bool {
        if (int(path.size()) == m) return t.has_arc(path.back(), start);
        VertexSet succ = (t.out(path.back()) & scope) - visited;
        for (int w = succ.first(); w != -1; w = succ.next(w)) {
            path.push_back(w);
            visited.add(w);
            if (self(self)) return true;
            path.pop_back();
            visited.remove(w);
        }
        return false;
    };
    if (!dfs(dfs))
        throw contract_error("hamilton_cycle: scope is not a strong tournament");
    return path;
}

// Chain of disjoint clusters where consecutive blocks are completely
// oriented front block -> next block.
struct JewelChain {
    std::vector<Cluster> blocks;  // blocks[0] = X_1, arcs flow to blocks[i+1]
    // The boundary searches ended with proven absence (not budget), so the
    // chain is genuinely non-extendable on that side.
    bool front_exhaustive = true;
    bool back_exhaustive = true;
    int p() const { return int(blocks.size()); }
    VertexSet all_members(int n) const {
        VertexSet s(n);
        for (const auto& b : blocks) s |= b.members;
        return s;
    }
};

namespace detail {

inline VertexSet complete_to(const OrientedGraph& t, const VertexSet& scope,
                             const VertexSet& block, const VertexSet& exclude) {
    // Vertices of scope sending an arc to every block member.
    VertexSet cand = scope - exclude;
    for (int x = block.first(); x != -1; x = block.next(x)) cand &= t.in(x);
    return cand;
}

inline VertexSet complete_from(const OrientedGraph& t, const VertexSet& scope,
                               const VertexSet& block, const VertexSet& exclude) {
    VertexSet cand = scope - exclude;
    for (int x = block.first(); x != -1; x = block.next(x)) cand &= t.out(x);
    return cand;
}

}  // namespace detail

// Greedy maximal chain: seed with the first cluster found in scope, then
// prepend blocks from the vertices complete to the front and append blocks
// from the vertices complete from the back. Completeness is read in t
// (tournament side), cluster strength in d; for tournaments pass the same
// graph twice.
inline JewelChain grow_jewel_chain(const OrientedGraph& t, const OrientedGraph& d,
                                   const VertexSet& scope, int k, int ell,
                                   long long node_budget = 200000) {
    JewelChain chain;
    auto seed = find_cluster(d, scope, k, ell, node_budget);
    if (seed.status != SearchStatus::found) {
        chain.front_exhaustive = chain.back_exhaustive =
            (seed.status == SearchStatus::proven_absent);
        return chain;
    }
    std::deque<Cluster> blocks{*seed.cluster};
    VertexSet used = seed.cluster->members;
    while (true) {
        VertexSet cand = detail::complete_to(t, scope, blocks.front().members, used);
        auto r = find_cluster(d, cand, k, ell, node_budget);
        if (r.status != SearchStatus::found) {
            chain.front_exhaustive = (r.status == SearchStatus::proven_absent);
            break;
        }
        blocks.push_front(*r.cluster);
        used |= r.cluster->members;
    }
    while (true) {
        VertexSet cand = detail::complete_from(t, scope, blocks.back().members, used);
        auto r = find_cluster(d, cand, k, ell, node_budget);
        if (r.status != SearchStatus::found) {
            chain.back_exhaustive = (r.status == SearchStatus::proven_absent);
            break;
        }
        blocks.push_back(*r.cluster);
        used |= r.cluster->members;
    }
    chain.blocks.assign(blocks.begin(), blocks.end());
    return chain;
}

struct ChainForwardReport {
    bool ok = true;
    ArcRef violation{-1, -1};  // arc from a later block into an earlier one
};

// Checks that no arc of t runs from a later block to an earlier one. For
// chains of genuine k-clusters in a (k-1)-arc-bounded graph this always
// holds: a backward arc spanning the minimal gap would contain a whole
// block inside its arc neighborhood.
inline ChainForwardReport assert_chain_forward(const OrientedGraph& t, const JewelChain& chain) {
    ChainForwardReport rep;
    for (std::size_t j = 1; j < chain.blocks.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            const VertexSet& early = chain.blocks[i].members;
            const VertexSet& late = chain.blocks[j].members;
            for (int u = late.first(); u != -1; u = late.next(u)) {
                VertexSet hits = t.out(u) & early;
                if (!hits.empty()) {
                    rep.ok = false;
                    rep.violation = {u, hits.first()};
                    return rep;
                }
            }
        }
    return rep;
}

}  // namespace arcbound
