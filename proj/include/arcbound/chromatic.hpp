#pragma once

// Dichromatic number (fewest acyclic classes) and the undirected chromatic
// and clique numbers used for sandwich bounds. Exact solvers are budgeted
// backtrackers; greedy variants never fail.

#include "core.hpp"

namespace arcbound {

// Partial vertex coloring over the ambient universe; -1 marks uncolored.
struct Coloring {
    std::vector<int> color;
    int color_count = 0;  // distinct colors in use

    Coloring() = default;
    explicit Coloring(int n) : color(n, -1) {}

    int n() const { return int(color.size()); }

    VertexSet domain() const {
        VertexSet s(n());
        for (int v = 0; v < n(); ++v)
            if (color[v] >= 0) s.add(v);
        return s;
    }

    bool covers(const VertexSet& s) const {
        for (int v = s.first(); v != -1; v = s.next(v))
            if (color[v] < 0) return false;
        return true;
    }

    void set(int v, int c) {
        assert(v >= 0 && v < n() && c >= 0);
        color[v] = c;
    }

    // Recompute color_count as the number of distinct colors present.
    void recount() {
        std::vector<int> seen;
        for (int c : color)
            if (c >= 0) seen.push_back(c);
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        color_count = int(seen.size());
    }

    // Smallest value exceeding every used color (palette width when colors
    // were allocated from 0).
    int span() const {
        int m = 0;
        for (int c : color) m = std::max(m, c + 1);
        return m;
    }

    // Relabel used colors to 0..k-1 in order of first appearance by vertex id.
    void compact() {
        std::vector<int> remap;
        for (int v = 0; v < n(); ++v) {
            int c = color[v];
            if (c < 0) continue;
            if (c >= int(remap.size())) remap.resize(c + 1, -1);
            if (remap[c] == -1) remap[c] = color_count_next(remap);
            color[v] = remap[c];
        }
        recount();
    }

    // Copy src's colors shifted by base onto vertices of sel that are still
    // uncolored here. Earlier assignments win.
    void absorb_shifted(const Coloring& src, const VertexSet& sel, int base) {
        for (int v = sel.first(); v != -1; v = sel.next(v)) {
            if (color[v] >= 0) continue;
            if (src.color[v] < 0)
                throw contract_error("absorb_shifted: vertex " + std::to_string(v) +
                                     " missing from source coloring");
            color[v] = base + src.color[v];
        }
    }

private:
    static int color_count_next(const std::vector<int>& remap) {
        int k = 0;
        for (int r : remap) k = std::max(k, r + 1);
        return k;
    }
};

// Classes must induce acyclic subdigraphs over the given scope.
// Throws incomplete_coloring_error when a scope vertex is uncolored;
// returns false when some class induces a directed cycle.
inline bool verify_coloring(const OrientedGraph& d, const Coloring& c, const VertexSet& scope) {
    if (c.n() != d.n()) throw contract_error("coloring universe mismatch");
    int max_color = -1;
    for (int v = scope.first(); v != -1; v = scope.next(v)) {
        if (c.color[v] < 0)
            throw incomplete_coloring_error("vertex " + std::to_string(v) + " uncolored");
        max_color = std::max(max_color, c.color[v]);
    }
    std::vector<VertexSet> classes(max_color + 1, VertexSet(d.n()));
    for (int v = scope.first(); v != -1; v = scope.next(v))
        classes[c.color[v]].add(v);
    for (const auto& cl : classes)
        if (!is_acyclic(d, cl)) return false;
    return true;
}

inline bool verify_coloring(const OrientedGraph& d, const Coloring& c) {
    return verify_coloring(d, c, VertexSet::all(d.n()));
}

// First-fit over ascending ids: each vertex joins the first class that
// stays acyclic, else opens a new one.
inline Coloring dichromatic_greedy(const OrientedGraph& d, const VertexSet& scope) {
    Coloring c(d.n());
    std::vector<VertexSet> classes;
    for (int v = scope.first(); v != -1; v = scope.next(v)) {
        int placed = -1;
        for (int i = 0; i < int(classes.size()); ++i) {
            classes[i].add(v);
            if (is_acyclic(d, classes[i])) {
                placed = i;
                break;
            }
            classes[i].remove(v);
        }
        if (placed == -1) {
            classes.emplace_back(d.n());
            classes.back().add(v);
            placed = int(classes.size()) - 1;
        }
        c.set(v, placed);
    }
    c.color_count = int(classes.size());
    return c;
}

inline Coloring dichromatic_greedy(const OrientedGraph& d) {
    return dichromatic_greedy(d, VertexSet::all(d.n()));
}

namespace detail {

// Feasibility of a k-coloring by backtracking over scope in id order.
// Symmetry cap: a vertex may only open class used_so_far (at most one new).
inline bool dichromatic_feasible(const OrientedGraph& d, const std::vector<int>& verts,
                                 std::size_t idx, int k, std::vector<VertexSet>& classes,
                                 int used, Coloring& out) {
    if (idx == verts.size()) return true;
    int v = verts[idx];
    int limit = std::min(used + 1, k);
    for (int i = 0; i < limit; ++i) {
        classes[i].add(v);
        if (is_acyclic(d, classes[i])) {
            out.color[v] = i;
            if (dichromatic_feasible(d, verts, idx + 1, k, classes,
                                     std::max(used, i + 1), out))
                return true;
        }
        classes[i].remove(v);
    }
    out.color[v] = -1;
    return false;
}

}  // namespace detail

struct DichromaticResult {
    int number = 0;
    Coloring witness;
};

// Exact dichromatic number of d[scope] with an optimal coloring, by
// iterative deepening from the trivial lower bound. Throws budget_error
// (carrying the greedy bound) when scope exceeds exact_limit.
inline DichromaticResult dichromatic_exact(const OrientedGraph& d, const VertexSet& scope,
                                           int exact_limit = 20) {
    DichromaticResult r;
    r.witness = Coloring(d.n());
    auto verts = scope.members();
    if (verts.empty()) return r;
    if (int(verts.size()) > exact_limit) {
        Coloring g = dichromatic_greedy(d, scope);
        throw budget_error("dichromatic_exact: scope of " + std::to_string(verts.size()) +
                               " exceeds limit " + std::to_string(exact_limit),
                           g.color_count);
    }
    for (int k = 1;; ++k) {
        std::vector<VertexSet> classes(k, VertexSet(d.n()));
        Coloring attempt(d.n());
        if (detail::dichromatic_feasible(d, verts, 0, k, classes, 0, attempt)) {
            attempt.recount();
            r.number = k;
            r.witness = attempt;
            return r;
        }
    }
}

inline DichromaticResult dichromatic_exact(const OrientedGraph& d, int exact_limit = 20) {
    return dichromatic_exact(d, VertexSet::all(d.n()), exact_limit);
}

// Loopless undirected graph on the same packed representation.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(int n) : n_(n), adj_(n, VertexSet(n)) {
        if (n < 0) throw contract_error("vertex count must be >= 0");
    }

    UndirectedGraph(int n, const std::vector<std::pair<int, int>>& edges)
        : UndirectedGraph(n) {
        for (auto [u, v] : edges) add_edge(u, v);
    }

    int n() const { return n_; }
    long long edge_count() const { return edge_count_; }

    void add_edge(int u, int v) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw contract_error("edge endpoint outside 0.." + std::to_string(n_ - 1));
        if (u == v) throw contract_error("loop at vertex " + std::to_string(u));
        if (adj_[u].test(v)) return;
        adj_[u].add(v);
        adj_[v].add(u);
        ++edge_count_;
    }

    bool has_edge(int u, int v) const { return adj_[u].test(v); }
    const VertexSet& adj(int v) const { return adj_[v]; }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](int v) {
                if (u < v) out.push_back({u, v});
            });
        return out;
    }

    // Connected components of the induced subgraph, ordered by smallest member.
    std::vector<VertexSet> components(const VertexSet& scope) const {
        std::vector<VertexSet> comps;
        VertexSet left = scope;
        while (!left.empty()) {
            int root = left.first();
            VertexSet comp(n_);
            std::vector<int> stack{root};
            comp.add(root);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                ((adj_[v] & left) - comp).for_each([&](int w) {
                    comp.add(w);
                    stack.push_back(w);
                });
            }
            comps.push_back(comp);
            left -= comp;
        }
        return comps;
    }

private:
    int n_ = 0;
    long long edge_count_ = 0;
    std::vector<VertexSet> adj_;
};

inline bool verify_graph_coloring(const UndirectedGraph& g, const std::vector<int>& color,
                                  const VertexSet& scope) {
    for (int v = scope.first(); v != -1; v = scope.next(v)) {
        if (color[v] < 0)
            throw incomplete_coloring_error("vertex " + std::to_string(v) + " uncolored");
        for (int w = (g.adj(v) & scope).first(); w != -1; w = (g.adj(v) & scope).next(w))
            if (color[w] == color[v]) return false;
    }
    return true;
}

namespace detail {

inline bool graph_feasible(const UndirectedGraph& g, const std::vector<int>& verts,
                           std::size_t idx, int k, std::vector<int>& color, int used) {
    if (idx == verts.size()) return true;
    int v = verts[idx];
    int limit = std::min(used + 1, k);
    for (int c = 0; c < limit; ++c) {
        bool ok = true;
        g.adj(v).for_each([&](int w) {
            if (color[w] == c) ok = false;
        });
        if (!ok) continue;
        color[v] = c;
        if (graph_feasible(g, verts, idx + 1, k, color, std::max(used, c + 1))) return true;
        color[v] = -1;
    }
    return false;
}

}  // namespace detail

struct GraphColoringResult {
    int number = 0;
    std::vector<int> color;  // ambient indexed, -1 outside scope
};

inline std::vector<int> graph_coloring_greedy(const UndirectedGraph& g, const VertexSet& scope) {
    std::vector<int> color(g.n(), -1);
    for (int v = scope.first(); v != -1; v = scope.next(v)) {
        std::vector<char> used;
        (g.adj(v) & scope).for_each([&](int w) {
            if (color[w] >= 0) {
                if (color[w] >= int(used.size())) used.resize(color[w] + 1, 0);
                used[color[w]] = 1;
            }
        });
        int c = 0;
        while (c < int(used.size()) && used[c]) ++c;
        color[v] = c;
    }
    return color;
}

// Exact chromatic number with witness. Vertices ordered by descending
// scope-degree (ties by id) to fail fast. Budgeted like dichromatic_exact.
inline GraphColoringResult graph_chromatic_exact(const UndirectedGraph& g, const VertexSet& scope,
                                                 int exact_limit = 16) {
    GraphColoringResult r;
    r.color.assign(g.n(), -1);
    auto verts = scope.members();
    if (verts.empty()) return r;
    if (int(verts.size()) > exact_limit) {
        auto greedy = graph_coloring_greedy(g, scope);
        int used = 0;
        for (int v : verts) used = std::max(used, greedy[v] + 1);
        throw budget_error("graph_chromatic_exact: scope of " + std::to_string(verts.size()) +
                               " exceeds limit " + std::to_string(exact_limit),
                           used);
    }
    std::stable_sort(verts.begin(), verts.end(), [&](int a, int b) {
        return (g.adj(a) & scope).count() > (g.adj(b) & scope).count();
    });
    for (int k = 1;; ++k) {
        std::vector<int> color(g.n(), -1);
        if (detail::graph_feasible(g, verts, 0, k, color, 0)) {
            r.number = k;
            r.color = color;
            return r;
        }
    }
}

inline int graph_chromatic_number(const UndirectedGraph& g, const VertexSet& scope,
                                  int exact_limit = 16) {
    return graph_chromatic_exact(g, scope, exact_limit).number;
}

struct CliqueResult {
    int value = 0;
    VertexSet witness;
    bool exact = true;
};

// Maximum clique via maximum independent set of the complement.
inline CliqueResult graph_clique_exact(const UndirectedGraph& g, const VertexSet& scope,
                                       int exact_limit = 60) {
    CliqueResult r;
    std::vector<VertexSet> comp(g.n(), VertexSet(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        comp[v] = VertexSet::all(g.n()) - g.adj(v);
        comp[v].remove(v);
    }
    if (scope.count() <= exact_limit) {
        r.witness = detail::max_independent_set_exact(comp, scope);
        r.exact = true;
    } else {
        r.witness = detail::greedy_independent_set(comp, scope);
        r.exact = false;
    }
    r.value = r.witness.count();
    return r;
}

// Underlying undirected graph of an oriented graph.
inline UndirectedGraph underlying_graph(const OrientedGraph& d) {
    UndirectedGraph g(d.n());
    for (const auto& e : d.arcs()) g.add_edge(e.from, e.to);
    return g;
}

// Greedily merges color classes whose union stays acyclic, lowest color ids
// first, then relabels compactly. Constructive palettes are generous by
// design; this recovers small counts without touching validity.
inline Coloring compress_coloring(const OrientedGraph& d, const VertexSet& scope,
                                  const Coloring& c) {
    std::vector<int> ids;
    std::vector<VertexSet> classes;
    for (int v = scope.first(); v != -1; v = scope.next(v)) {
        int col = c.color[static_cast<size_t>(v)];
        if (col < 0) throw incomplete_coloring_error("compress: vertex uncolored");
        size_t i = 0;
        while (i < ids.size() && ids[i] != col) ++i;
        if (i == ids.size()) {
            ids.push_back(col);
            classes.emplace_back(d.n());
        }
        classes[i].add(v);
    }
    std::vector<size_t> order(ids.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return ids[a] < ids[b]; });
    for (size_t a = 0; a < order.size(); ++a) {
        if (classes[order[a]].empty()) continue;
        for (size_t b = a + 1; b < order.size(); ++b) {
            if (classes[order[b]].empty()) continue;
            VertexSet merged = classes[order[a]] | classes[order[b]];
            if (is_acyclic(d, merged)) {
                classes[order[a]] = merged;
                classes[order[b]] = VertexSet(d.n());
            }
        }
    }
    Coloring out(d.n());
    int next = 0;
    for (size_t a = 0; a < order.size(); ++a) {
        if (classes[order[a]].empty()) continue;
        for (int v = classes[order[a]].first(); v != -1; v = classes[order[a]].next(v))
            out.set(v, next);
        ++next;
    }
    out.recount();
    return out;
}

}  // namespace arcbound
