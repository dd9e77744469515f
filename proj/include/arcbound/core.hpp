#pragma once

// Dense bitmask digraph core: vertex sets, oriented graphs (loopless,
// digon-free), and the small structural queries everything else builds on.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arcbound {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Input violates a documented precondition (bad arc, bad set, invalid call).
struct contract_error : error {
    using error::error;
};

// An exact computation was requested beyond its configured size budget.
// Carries the greedy fallback value so callers can degrade deliberately.
struct budget_error : error {
    int greedy_bound;
    budget_error(const std::string& what, int greedy)
        : error(what), greedy_bound(greedy) {}
};

struct parse_error : error {
    int line;
    parse_error(const std::string& what, int line_no)
        : error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct incomplete_coloring_error : error {
    using error::error;
};

struct no_path_error : error {
    using error::error;
};

// Subset of a fixed vertex universe 0..n-1, packed 64 per word.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe)
        : n_(universe), w_((universe + 63) / 64, 0) {
        if (universe < 0) throw contract_error("vertex universe must be >= 0");
    }

    static VertexSet all(int universe) {
        VertexSet s(universe);
        for (auto& w : s.w_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    static VertexSet of(int universe, std::initializer_list<int> vs) {
        VertexSet s(universe);
        for (int v : vs) s.add(v);
        return s;
    }

    int universe() const { return n_; }

    bool test(int v) const {
        assert(v >= 0 && v < n_);
        return (w_[v >> 6] >> (v & 63)) & 1u;
    }

    void add(int v) {
        if (v < 0 || v >= n_) throw contract_error("vertex " + std::to_string(v) + " outside universe");
        w_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void remove(int v) {
        assert(v >= 0 && v < n_);
        w_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    bool empty() const {
        for (auto w : w_)
            if (w) return false;
        return true;
    }

    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    // Smallest member, or -1.
    int first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64) + std::countr_zero(w_[i]);
        return -1;
    }

    // Smallest member > v, or -1.
    int next(int v) const {
        int start = v + 1;
        if (start >= n_) return -1;
        std::size_t i = std::size_t(start) >> 6;
        std::uint64_t w = w_[i] & (~std::uint64_t{0} << (start & 63));
        while (true) {
            if (w) return int(i * 64) + std::countr_zero(w);
            if (++i >= w_.size()) return -1;
            w = w_[i];
        }
    }

    bool intersects(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool contains_all(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (o.w_[i] & ~w_[i]) return false;
        return true;
    }

    VertexSet& operator&=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    // Set difference.
    VertexSet& operator-=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    bool operator==(const VertexSet& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const VertexSet& o) const { return !(*this == o); }

    // Lexicographic on the bit pattern from vertex 0 up; gives a stable
    // total order for deterministic tie-breaking.
    bool lex_less(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (w_[i] == o.w_[i]) continue;
            // Smaller member first: compare lowest differing bit.
            std::uint64_t diff = w_[i] ^ o.w_[i];
            std::uint64_t low = diff & ~(diff - 1);
            return w_[i] & low;
        }
        return false;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(8);
        for (int v = first(); v != -1; v = next(v)) out.push_back(v);
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (int v = first(); v != -1; v = next(v)) f(v);
    }

private:
    void trim() {
        if (n_ % 64 != 0 && !w_.empty())
            w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Ordered arc u -> v.
struct ArcRef {
    int from = -1;
    int to = -1;
    bool operator==(const ArcRef& o) const { return from == o.from && to == o.to; }
    bool operator<(const ArcRef& o) const {
        return from != o.from ? from < o.from : to < o.to;
    }
};

// Loopless, digon-free directed graph with bitmask adjacency rows.
// Library functions treat instances as immutable values; add_arc exists
// for builders (parsers, generators, completions) before first use.
class OrientedGraph {
public:
    OrientedGraph() = default;
    explicit OrientedGraph(int n)
        : n_(n), out_(n, VertexSet(n)), in_(n, VertexSet(n)) {
        if (n < 0) throw contract_error("vertex count must be >= 0");
    }

    OrientedGraph(int n, const std::vector<std::pair<int, int>>& arcs)
        : OrientedGraph(n) {
        for (auto [u, v] : arcs) add_arc(u, v);
    }

    int n() const { return n_; }
    long long arc_count() const { return arc_count_; }

    bool has_arc(int u, int v) const {
        assert(u >= 0 && u < n_ && v >= 0 && v < n_);
        return out_[u].test(v);
    }

    bool adjacent(int u, int v) const { return has_arc(u, v) || has_arc(v, u); }

    const VertexSet& out(int v) const { return out_[v]; }
    const VertexSet& in(int v) const { return in_[v]; }

    // Neighbors in the underlying undirected graph.
    VertexSet und(int v) const { return out_[v] | in_[v]; }

    void add_arc(int u, int v) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw contract_error("arc endpoint outside 0.." + std::to_string(n_ - 1));
        if (u == v) throw contract_error("loop at vertex " + std::to_string(u));
        if (out_[v].test(u))
            throw contract_error("digon between " + std::to_string(u) + " and " + std::to_string(v));
        if (out_[u].test(v)) return;  // already present
        out_[u].add(v);
        in_[v].add(u);
        ++arc_count_;
    }

    // Every unordered pair carries exactly one arc.
    bool is_tournament() const {
        return arc_count_ == (long long)n_ * (n_ - 1) / 2;
    }

    // Every pair inside scope is adjacent.
    bool is_tournament_on(const VertexSet& scope) const {
        for (int v = scope.first(); v != -1; v = scope.next(v)) {
            VertexSet others = scope;
            others.remove(v);
            if (!und(v).contains_all(others)) return false;
        }
        return true;
    }

    // Arcs in lexicographic order.
    std::vector<ArcRef> arcs() const {
        std::vector<ArcRef> out;
        out.reserve(std::size_t(arc_count_));
        for (int u = 0; u < n_; ++u)
            out_[u].for_each([&](int v) { out.push_back({u, v}); });
        return out;
    }

    // Arcs with both ends in scope, lexicographic order.
    std::vector<ArcRef> arcs_within(const VertexSet& scope) const {
        std::vector<ArcRef> res;
        for (int u = scope.first(); u != -1; u = scope.next(u))
            (out_[u] & scope).for_each([&](int v) { res.push_back({u, v}); });
        return res;
    }

    OrientedGraph reversed() const {
        OrientedGraph r(n_);
        r.out_ = in_;
        r.in_ = out_;
        r.arc_count_ = arc_count_;
        return r;
    }

    // Same universe, arcs restricted to scope.
    OrientedGraph induced(const VertexSet& scope) const {
        OrientedGraph g(n_);
        for (int v = scope.first(); v != -1; v = scope.next(v)) {
            g.out_[v] = out_[v] & scope;
            g.in_[v] = in_[v] & scope;
            g.arc_count_ += g.out_[v].count();
        }
        return g;
    }

private:
    int n_ = 0;
    long long arc_count_ = 0;
    std::vector<VertexSet> out_, in_;
};

// N(e) for e = u->v: vertices w with v->w and w->u, i.e. the third corners
// of directed triangles through e.
inline VertexSet arc_neighborhood(const OrientedGraph& d, ArcRef e) {
    if (!d.has_arc(e.from, e.to))
        throw contract_error("arc_neighborhood: no arc " + std::to_string(e.from) +
                             "->" + std::to_string(e.to));
    return d.out(e.to) & d.in(e.from);
}

inline VertexSet arc_neighborhood(const OrientedGraph& d, ArcRef e, const VertexSet& scope) {
    return arc_neighborhood(d, e) & scope;
}

// Vertices with no arc either way to v (v excluded).
inline VertexSet nonedge_neighborhood(const OrientedGraph& d, int v) {
    if (v < 0 || v >= d.n()) throw contract_error("vertex outside universe");
    VertexSet s = VertexSet::all(d.n());
    s -= d.out(v);
    s -= d.in(v);
    s.remove(v);
    return s;
}

// Vertices outside S with at least one in-arc from S and one out-arc into S.
inline VertexSet punch_neighborhood(const OrientedGraph& d, const VertexSet& s) {
    VertexSet from_s(d.n()), into_s(d.n());
    for (int v = s.first(); v != -1; v = s.next(v)) {
        from_s |= d.out(v);
        into_s |= d.in(v);
    }
    VertexSet res = from_s & into_s;
    res -= s;
    return res;
}

// Kahn over the induced subdigraph.
inline bool is_acyclic(const OrientedGraph& d, const VertexSet& scope) {
    std::vector<int> indeg(d.n(), 0);
    std::vector<int> stack;
    int m = 0;
    for (int v = scope.first(); v != -1; v = scope.next(v)) {
        indeg[v] = (d.in(v) & scope).count();
        if (indeg[v] == 0) stack.push_back(v);
        ++m;
    }
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        (d.out(v) & scope).for_each([&](int w) {
            if (--indeg[w] == 0) stack.push_back(w);
        });
    }
    return seen == m;
}

inline bool is_acyclic(const OrientedGraph& d) {
    return is_acyclic(d, VertexSet::all(d.n()));
}

// Strongly connected components of d[scope], listed in a topological order
// of the condensation (all arcs run from earlier blocks to later ones).
inline std::vector<VertexSet> scc_decompose(const OrientedGraph& d, const VertexSet& scope) {
    const int n = d.n();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0, comp_count = 0;

    // Iterative Tarjan; roots in ascending id for determinism.
    struct Frame {
        int v;
        int nb;  // last neighbor explored, -1 before first
    };
    std::vector<Frame> frames;
    for (int root = scope.first(); root != -1; root = scope.next(root)) {
        if (index[root] != -1) continue;
        frames.push_back({root, -1});
        while (!frames.empty()) {
            Frame& f = frames.back();
            int v = f.v;
            if (f.nb == -1) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            } else {
                // Returning from child f.nb.
                low[v] = std::min(low[v], low[f.nb]);
            }
            int w = -1;
            VertexSet succ = d.out(v) & scope;
            for (w = succ.next(f.nb); w != -1; w = succ.next(w)) {
                if (index[w] == -1) break;
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (w != -1) {
                f.nb = w;
                frames.push_back({w, -1});
                continue;
            }
            if (low[v] == index[v]) {
                while (true) {
                    int x = stack.back();
                    stack.pop_back();
                    on_stack[x] = false;
                    comp[x] = comp_count;
                    if (x == v) break;
                }
                ++comp_count;
            }
            frames.pop_back();
            if (!frames.empty()) frames.back().nb = v;
        }
    }

    // Tarjan emits components in reverse topological order.
    std::vector<VertexSet> blocks(comp_count, VertexSet(n));
    for (int v = scope.first(); v != -1; v = scope.next(v))
        blocks[comp_count - 1 - comp[v]].add(v);
    return blocks;
}

inline std::vector<VertexSet> scc_decompose(const OrientedGraph& d) {
    return scc_decompose(d, VertexSet::all(d.n()));
}

inline bool strongly_connected(const OrientedGraph& d, const VertexSet& scope) {
    int c = scope.count();
    if (c <= 1) return true;
    return scc_decompose(d, scope).size() == 1;
}

namespace detail {

// Exact maximum independent set over undirected adjacency rows, branch and
// bound with the trivial |chosen| + |open| cutoff. Desk scale only.
inline void mis_rec(const std::vector<VertexSet>& adj, VertexSet open,
                    VertexSet chosen, VertexSet& best) {
    if (chosen.count() + open.count() <= best.count()) return;
    int pick = -1, max_deg = -1;
    for (int v = open.first(); v != -1; v = open.next(v)) {
        int deg = (adj[v] & open).count();
        if (deg > max_deg) {
            max_deg = deg;
            pick = v;
        }
    }
    if (pick == -1) {
        if (chosen.count() > best.count()) best = chosen;
        return;
    }
    if (max_deg == 0) {
        // Remaining vertices are pairwise non-adjacent; take them all.
        chosen |= open;
        if (chosen.count() > best.count()) best = chosen;
        return;
    }
    // Include pick.
    VertexSet with = chosen;
    with.add(pick);
    VertexSet open_with = open;
    open_with.remove(pick);
    open_with -= adj[pick];
    mis_rec(adj, open_with, with, best);
    // Exclude pick.
    VertexSet open_without = open;
    open_without.remove(pick);
    mis_rec(adj, open_without, chosen, best);
}

inline VertexSet max_independent_set_exact(const std::vector<VertexSet>& adj,
                                           const VertexSet& scope) {
    VertexSet best(scope.universe());
    // Greedy seed: repeatedly take the min-degree vertex.
    VertexSet open = scope, seed(scope.universe());
    while (!open.empty()) {
        int pick = -1, min_deg = -1;
        for (int v = open.first(); v != -1; v = open.next(v)) {
            int deg = (adj[v] & open).count();
            if (min_deg == -1 || deg < min_deg) {
                min_deg = deg;
                pick = v;
            }
        }
        seed.add(pick);
        open.remove(pick);
        open -= adj[pick];
    }
    best = seed;
    mis_rec(adj, scope, VertexSet(scope.universe()), best);
    return best;
}

inline VertexSet greedy_independent_set(const std::vector<VertexSet>& adj,
                                        const VertexSet& scope) {
    VertexSet open = scope, res(scope.universe());
    while (!open.empty()) {
        int pick = -1, min_deg = -1;
        for (int v = open.first(); v != -1; v = open.next(v)) {
            int deg = (adj[v] & open).count();
            if (min_deg == -1 || deg < min_deg) {
                min_deg = deg;
                pick = v;
            }
        }
        res.add(pick);
        open.remove(pick);
        open -= adj[pick];
    }
    return res;
}

inline std::vector<VertexSet> und_rows(const OrientedGraph& d) {
    std::vector<VertexSet> adj(d.n(), VertexSet(d.n()));
    for (int v = 0; v < d.n(); ++v) adj[v] = d.und(v);
    return adj;
}

}  // namespace detail

struct IndependenceResult {
    int value = 0;
    VertexSet witness;
    bool exact = true;
};

// Maximum set with no arcs between members. Exact up to exact_limit
// vertices, greedy lower bound (exact = false) above.
inline IndependenceResult independence_number(const OrientedGraph& d, const VertexSet& scope,
                                              int exact_limit = 60) {
    IndependenceResult r;
    auto adj = detail::und_rows(d);
    if (scope.count() <= exact_limit) {
        r.witness = detail::max_independent_set_exact(adj, scope);
        r.exact = true;
    } else {
        r.witness = detail::greedy_independent_set(adj, scope);
        r.exact = false;
    }
    r.value = r.witness.count();
    return r;
}

inline IndependenceResult independence_number(const OrientedGraph& d, int exact_limit = 60) {
    return independence_number(d, VertexSet::all(d.n()), exact_limit);
}

}  // namespace arcbound
