#pragma once

// Brute-force reference oracles for the test suite. These deliberately use
// the dumbest correct algorithms (partition enumeration, subset scans,
// explicit triangle checks) and share no code paths with the library
// implementations they vouch for; they only read graphs through the public
// has_arc/n interface.

#include <arcbound/chromatic.hpp>
#include <arcbound/core.hpp>

#include <vector>

namespace oracle {

using arcbound::OrientedGraph;
using arcbound::UndirectedGraph;
using arcbound::VertexSet;

// Directed cycle detection by three-color DFS over the induced subdigraph.
inline bool has_cycle(const OrientedGraph& d, const std::vector<int>& verts) {
    std::vector<int> state(d.n(), 0);  // 0 unseen, 1 on path, 2 done
    std::vector<char> in_scope(d.n(), 0);
    for (int v : verts) in_scope[v] = 1;
    bool found = false;
    auto dfs = [&](auto&& self, int v) -> void {
        state[v] = 1;
        for (int w : verts) {
            if (found) return;
            if (!d.has_arc(v, w)) continue;
            if (state[w] == 1) {
                found = true;
                return;
            }
            if (state[w] == 0) self(self, w);
        }
        state[v] = 2;
    };
    for (int v : verts) {
        if (found) break;
        if (state[v] == 0) dfs(dfs, v);
    }
    return found;
}

inline bool has_cycle(const OrientedGraph& d, const VertexSet& scope) {
    return has_cycle(d, scope.members());
}

// Dichromatic number by full enumeration of set partitions (restricted
// growth strings); a partition is valid when every block is cycle-free.
inline int dichromatic_number(const OrientedGraph& d, const VertexSet& scope) {
    auto verts = scope.members();
    const int m = int(verts.size());
    if (m == 0) return 0;
    std::vector<int> block(m, 0);
    int best = m;
    auto rec = [&](auto&& self, int idx, int used) -> void {
        if (used >= best) return;
        if (idx == m) {
            std::vector<std::vector<int>> blocks(used);
            for (int i = 0; i < m; ++i) blocks[block[i]].push_back(verts[i]);
            for (const auto& b : blocks)
                if (has_cycle(d, b)) return;
            best = used;
            return;
        }
        for (int b = 0; b <= used && b < best; ++b) {
            block[idx] = b;
            self(self, idx + 1, std::max(used, b + 1));
        }
    };
    rec(rec, 0, 0);
    return best;
}

inline int dichromatic_number(const OrientedGraph& d) {
    return dichromatic_number(d, VertexSet::all(d.n()));
}

// Chromatic number of an undirected graph by the same partition scan.
inline int chromatic_number(const UndirectedGraph& g, const VertexSet& scope) {
    auto verts = scope.members();
    const int m = int(verts.size());
    if (m == 0) return 0;
    std::vector<int> block(m, 0);
    int best = m;
    auto rec = [&](auto&& self, int idx, int used) -> void {
        if (used >= best) return;
        if (idx == m) {
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    if (block[i] == block[j] && g.has_edge(verts[i], verts[j])) return;
            best = used;
            return;
        }
        for (int b = 0; b <= used && b < best; ++b) {
            block[idx] = b;
            self(self, idx + 1, std::max(used, b + 1));
        }
    };
    rec(rec, 0, 0);
    return best;
}

inline int chromatic_number(const UndirectedGraph& g) {
    return chromatic_number(g, VertexSet::all(g.n()));
}

// Independence number by scanning all subsets of scope (|scope| <= 24).
inline int independence_number(const OrientedGraph& d, const VertexSet& scope) {
    auto verts = scope.members();
    const int m = int(verts.size());
    int best = 0;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            for (int j = i + 1; j < m && ok; ++j) {
                if (!(mask >> j & 1)) continue;
                if (d.has_arc(verts[i], verts[j]) || d.has_arc(verts[j], verts[i])) ok = false;
            }
        }
        if (ok) best = std::max(best, __builtin_popcountl(mask));
    }
    return best;
}

inline int independence_number(const OrientedGraph& d) {
    return oracle::independence_number(d, VertexSet::all(d.n()));
}

// Maximum clique size in an undirected graph by full subset scan.
inline int clique_number(const UndirectedGraph& g, const VertexSet& scope) {
    auto verts = scope.members();
    const int m = int(verts.size());
    int best = 0;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            for (int j = i + 1; j < m && ok; ++j) {
                if (!(mask >> j & 1)) continue;
                if (!g.has_edge(verts[i], verts[j])) ok = false;
            }
        }
        if (ok) best = std::max(best, __builtin_popcountl(mask));
    }
    return best;
}

// Minimum dominating set size (every vertex outside the set receives an arc
// from inside). Full subset scan, |scope| <= 24.
inline int domination_number(const OrientedGraph& d, const VertexSet& scope) {
    auto verts = scope.members();
    const int m = int(verts.size());
    if (m == 0) return 0;
    int best = m;
    for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
        int size = __builtin_popcountl(mask);
        if (size >= best) continue;
        bool ok = true;
        for (int j = 0; j < m && ok; ++j) {
            if (mask >> j & 1) continue;
            bool dominated = false;
            for (int i = 0; i < m && !dominated; ++i)
                if ((mask >> i & 1) && d.has_arc(verts[i], verts[j])) dominated = true;
            if (!dominated) ok = false;
        }
        if (ok) best = size;
    }
    return best;
}

inline int domination_number(const OrientedGraph& d) {
    return domination_number(d, VertexSet::all(d.n()));
}

// Arc neighborhood by explicit triangle membership test.
inline std::vector<int> arc_neighborhood(const OrientedGraph& d, int u, int v) {
    std::vector<int> out;
    for (int w = 0; w < d.n(); ++w)
        if (d.has_arc(v, w) && d.has_arc(w, u)) out.push_back(w);
    return out;
}

// Shortest directed cycle length by DFS over all simple paths from each
// start (smallest start id wins ties); 0 when acyclic.
inline int girth(const OrientedGraph& d, const VertexSet& scope) {
    auto verts = scope.members();
    int best = 0;
    std::vector<char> on_path(d.n(), 0);
    auto dfs = [&](auto&& self, int start, int v, int len) -> void {
        if (best && len >= best) return;
        for (int w : verts) {
            if (!d.has_arc(v, w)) continue;
            if (w == start) {
                // Path holds len vertices; the closing arc makes a len-cycle.
                if (!best || len < best) best = len;
                continue;
            }
            if (w < start || on_path[w]) continue;  // canonical: min vertex = start
            on_path[w] = 1;
            self(self, start, w, len + 1);
            on_path[w] = 0;
        }
    };
    for (int s : verts) {
        on_path[s] = 1;
        dfs(dfs, s, s, 1);
        on_path[s] = 0;
    }
    return best;
}

inline int girth(const OrientedGraph& d) { return girth(d, VertexSet::all(d.n())); }

}  // namespace oracle
