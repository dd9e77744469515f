#pragma once

// Local decomposition along shortest paths in tournaments: region
// assignment, rotating arc-neighborhood palettes, endpoint coloring, and
// domination-pair coloring. Everything here takes an explicit scope and an
// arc oracle that colors subsets of arc neighborhoods.

#include "chromatic.hpp"
#include "core.hpp"

#include <functional>

namespace arcbound {

struct Path {
    std::vector<int> verts;
    int k() const { return int(verts.size()) - 1; }  // arc count
    int front() const { return verts.front(); }
    int back() const { return verts.back(); }
    // Arc e_i = verts[i-1] -> verts[i], 1-indexed like the region rules.
    ArcRef arc(int i) const { return {verts[i - 1], verts[i]}; }
};

// BFS shortest path from u to v inside d[scope]; path [u] when u == v.
inline Path shortest_path(const OrientedGraph& d, const VertexSet& scope, int u, int v) {
    if (!scope.test(u) || !scope.test(v))
        throw contract_error("shortest_path endpoints must lie in scope");
    std::vector<int> parent(d.n(), -1);
    std::vector<int> queue{u};
    std::vector<char> seen(d.n(), 0);
    seen[u] = 1;
    for (std::size_t head = 0; head < queue.size() && !seen[v]; ++head) {
        int x = queue[head];
        (d.out(x) & scope).for_each([&](int w) {
            if (seen[w]) return;
            seen[w] = 1;
            parent[w] = x;
            queue.push_back(w);
        });
    }
    if (!seen[v])
        throw no_path_error("no directed path " + std::to_string(u) + " -> " + std::to_string(v));
    Path p;
    for (int x = v; x != -1; x = parent[x]) p.verts.push_back(x);
    std::reverse(p.verts.begin(), p.verts.end());
    return p;
}

// Colors a subset of an arc neighborhood; must cover the subset with colors
// numbered from 0.
using ArcOracle = std::function<Coloring(ArcRef, const VertexSet&)>;

// Default oracle: exact dichromatic coloring when the subset fits the
// budget, greedy otherwise (optionally reporting the degrade).
inline ArcOracle make_arc_oracle(const OrientedGraph& d, int exact_limit,
                                 bool* degraded = nullptr) {
    return [&d, exact_limit, degraded](ArcRef e, const VertexSet& subset) -> Coloring {
        if (!arc_neighborhood(d, e).contains_all(subset))
            throw contract_error("arc oracle called outside the arc neighborhood of " +
                                 std::to_string(e.from) + "->" + std::to_string(e.to));
        if (subset.count() <= exact_limit) return dichromatic_exact(d, subset, exact_limit).witness;
        if (degraded) *degraded = true;
        return dichromatic_greedy(d, subset);
    };
}

struct ArcBoundedness {
    int t = 0;
    bool exact = true;
    ArcRef witness{-1, -1};  // first arc attaining t
};

// t = max over arcs within scope of the dichromatic number of the arc's
// neighborhood (restricted to scope). Greedy upper bounds past the budget.
inline ArcBoundedness arc_boundedness(const OrientedGraph& d, const VertexSet& scope,
                                      int exact_limit = 20) {
    ArcBoundedness r;
    for (const auto& e : d.arcs_within(scope)) {
        VertexSet nb = arc_neighborhood(d, e) & scope;
        int chi;
        if (nb.count() <= exact_limit) {
            chi = dichromatic_exact(d, nb, exact_limit).number;
        } else {
            chi = dichromatic_greedy(d, nb).color_count;
            r.exact = false;
        }
        if (chi > r.t) {
            r.t = chi;
            r.witness = e;
        }
    }
    return r;
}

inline ArcBoundedness arc_boundedness(const OrientedGraph& d, int exact_limit = 20) {
    return arc_boundedness(d, VertexSet::all(d.n()), exact_limit);
}

// Region of a shortest path P: the vertices behind the start and ahead of
// the end, plus P itself. Every region vertex is assigned to one path arc
// (index 1..k), except the special tags used by the short cases.
struct RegionAssignment {
    Path path;
    VertexSet region;        // all assigned or tagged vertices
    std::vector<int> index;  // per vertex: arc index 1..k, 0 = unassigned
    int middle = -1;         // k == 2: the interior path vertex
    VertexSet endpoints;     // k <= 1: path vertices, colored privately
};

namespace detail {

inline void require_arc(const OrientedGraph& t, int u, int v, const char* what) {
    if (!t.has_arc(u, v))
        throw contract_error(std::string(what) + ": missing arc " + std::to_string(u) +
                             "->" + std::to_string(v));
}

}  // namespace detail

// Assignment rules: a non-path vertex w with w -> P.front() and
// P.back() -> w joins arc i+1 where i is the last path vertex w beats;
// path vertices join arc i-1 (when i >= 2) or i+2, whichever exists and is
// smaller. The k <= 2 cases tag endpoints and middle instead of forcing
// them into palettes. P must be a shortest path of a tournament-like scope:
// any forward arc skipping along P is rejected.
inline RegionAssignment path_region(const OrientedGraph& t, const VertexSet& scope,
                                    const Path& p) {
    const int k = p.k();
    RegionAssignment ra;
    ra.path = p;
    ra.region = VertexSet(t.n());
    ra.index.assign(t.n(), 0);
    ra.endpoints = VertexSet(t.n());

    for (int v : p.verts)
        if (!scope.test(v)) throw contract_error("path leaves scope");
    for (int i = 0; i + 1 <= k; ++i)
        detail::require_arc(t, p.verts[i], p.verts[i + 1], "path_region");
    for (int i = 0; i + 2 <= k; ++i)
        for (int j = i + 2; j <= k; ++j)
            if (t.has_arc(p.verts[i], p.verts[j]))
                throw contract_error("path_region: forward shortcut " +
                                     std::to_string(p.verts[i]) + "->" +
                                     std::to_string(p.verts[j]) +
                                     " contradicts a shortest path");

    VertexSet on_path(t.n());
    for (int v : p.verts) on_path.add(v);
    ra.region = on_path;

    if (k == 0) {
        ra.endpoints.add(p.front());
        return ra;
    }

    // Non-path targets: behind the start and ahead of the end.
    VertexSet targets = (t.in(p.front()) & t.out(p.back()) & scope) - on_path;
    ra.region |= targets;
    for (int w = targets.first(); w != -1; w = targets.next(w)) {
        int last = -1;
        for (int i = 0; i <= k; ++i)
            if (t.has_arc(w, p.verts[i])) last = i;
        // w beats the start, never the end.
        if (last < 0 || last >= k)
            throw contract_error("path_region: target " + std::to_string(w) +
                                 " has no valid arc index");
        detail::require_arc(t, p.verts[last + 1], w, "path_region target");
        ra.index[w] = last + 1;
    }

    if (k == 1) {
        ra.endpoints.add(p.front());
        ra.endpoints.add(p.back());
        return ra;
    }
    if (k == 2) {
        // Ends swap into each other's far palette; the interior vertex is
        // tagged for a private color.
        detail::require_arc(t, p.verts[2], p.verts[0], "path_region");
        ra.index[p.verts[0]] = 2;
        ra.index[p.verts[2]] = 1;
        ra.middle = p.verts[1];
        return ra;
    }
    for (int i = 0; i <= k; ++i) {
        int to = (i >= 2) ? i - 1 : i + 2;
        ra.index[p.verts[i]] = to;
        // Membership in the chosen arc's neighborhood.
        detail::require_arc(t, p.verts[to], p.verts[i], "path vertex placement");
        detail::require_arc(t, p.verts[i], p.verts[to - 1], "path vertex placement");
    }
    return ra;
}

struct RegionColoring {
    Coloring coloring;
    int span = 0;
    RegionAssignment assignment;
};

// Colors the whole region with palettes indexed by path arc. For k >= 3 the
// palettes rotate mod 5 over a uniform width, which stays valid because a
// forward arc between neighborhoods five or more steps apart would shortcut
// the path. Short paths lay palettes side by side plus private colors.
inline RegionColoring color_path_region(const OrientedGraph& t, const VertexSet& scope,
                                        const Path& p, const ArcOracle& oracle) {
    RegionColoring rc;
    rc.assignment = path_region(t, scope, p);
    const RegionAssignment& ra = rc.assignment;
    const int k = p.k();
    rc.coloring = Coloring(t.n());

    if (k == 0) {
        rc.coloring.set(p.front(), 0);
        rc.span = 1;
        rc.coloring.recount();
        return rc;
    }

    std::vector<VertexSet> slice(k + 1, VertexSet(t.n()));
    for (int v = ra.region.first(); v != -1; v = ra.region.next(v))
        if (ra.index[v] > 0) slice[ra.index[v]].add(v);

    std::vector<Coloring> sub(k + 1);
    std::vector<int> width(k + 1, 0);
    for (int i = 1; i <= k; ++i) {
        sub[i] = oracle(p.arc(i), slice[i]);
        if (!sub[i].covers(slice[i]))
            throw contract_error("arc oracle left part of a palette slice uncolored");
        for (int v = slice[i].first(); v != -1; v = slice[i].next(v))
            width[i] = std::max(width[i], sub[i].color[v] + 1);
    }

    if (k == 1) {
        rc.coloring.absorb_shifted(sub[1], slice[1], 0);
        rc.coloring.set(p.front(), width[1]);
        rc.coloring.set(p.back(), width[1] + 1);
        rc.span = width[1] + 2;
        rc.coloring.recount();
        return rc;
    }
    if (k == 2) {
        rc.coloring.absorb_shifted(sub[1], slice[1], 0);
        rc.coloring.absorb_shifted(sub[2], slice[2], width[1]);
        rc.coloring.set(ra.middle, width[1] + width[2]);
        rc.span = width[1] + width[2] + 1;
        rc.coloring.recount();
        return rc;
    }

    // Uniform width keeps same-residue palettes aligned.
    int t_width = 0;
    for (int i = 1; i <= k; ++i) t_width = std::max(t_width, width[i]);
    rc.span = 0;
    for (int i = 1; i <= k; ++i) {
        int base = (i % 5) * t_width;
        rc.coloring.absorb_shifted(sub[i], slice[i], base);
        rc.span = std::max(rc.span, base + t_width);
    }
    rc.coloring.recount();
    return rc;
}

struct EndpointColoring {
    Coloring coloring;
    int span = 0;
    int region_span = 0, out_span = 0, in_span = 0;
};

// Colors all of scope given a coloring of the start's out-neighborhood and
// one of the end's in-neighborhood: region palette first, then the two
// endpoint palettes shifted after it. In a tournament scope these three
// parts cover everything.
inline EndpointColoring color_via_endpoints(const OrientedGraph& t, const VertexSet& scope,
                                            int u, int v, const Coloring& out_col,
                                            const Coloring& in_col, const ArcOracle& oracle) {
    Path p = shortest_path(t, scope, u, v);
    RegionColoring rc = color_path_region(t, scope, p, oracle);

    EndpointColoring ec;
    ec.coloring = rc.coloring;
    ec.region_span = rc.span;

    VertexSet out_side = (t.out(u) & scope) - ec.coloring.domain();
    if (!out_col.covers(out_side))
        throw contract_error("endpoint coloring: out-neighborhood coloring has gaps");
    ec.coloring.absorb_shifted(out_col, out_side, ec.region_span);
    for (int w = out_side.first(); w != -1; w = out_side.next(w))
        ec.out_span = std::max(ec.out_span, out_col.color[w] + 1);

    VertexSet in_side = (t.in(v) & scope) - ec.coloring.domain();
    if (!in_col.covers(in_side))
        throw contract_error("endpoint coloring: in-neighborhood coloring has gaps");
    ec.coloring.absorb_shifted(in_col, in_side, ec.region_span + ec.out_span);
    for (int w = in_side.first(); w != -1; w = in_side.next(w))
        ec.in_span = std::max(ec.in_span, in_col.color[w] + 1);

    if (!ec.coloring.covers(scope))
        throw contract_error("endpoint coloring: scope not covered; "
                             "scope is not tournament-like around the path");
    ec.span = ec.region_span + ec.out_span + ec.in_span;
    ec.coloring.recount();
    return ec;
}

struct DominationColoring {
    Coloring coloring;
    int span = 0;
    int private_span = 0;
};

// Colors `restrict` from a dominating set and an absorbing set of it:
// private colors for their members, then one path-region palette per
// (absorber, dominator) pair, laid out sequentially. Every restricted
// vertex beats some absorber and is beaten by some dominator, so it lands
// in that pair's region. Paths run through all of scope, so restrict may
// be any dominated/absorbed subset of a strong scope.
inline DominationColoring color_via_domination(const OrientedGraph& t, const VertexSet& scope,
                                               const VertexSet& restrict_to,
                                               const VertexSet& dominating,
                                               const VertexSet& absorbing,
                                               const ArcOracle& oracle) {
    if (!scope.contains_all(restrict_to))
        throw contract_error("domination coloring: restriction outside scope");
    if (!restrict_to.contains_all(dominating) || !restrict_to.contains_all(absorbing))
        throw contract_error("domination coloring: sets must lie inside the restriction");
    for (int w = restrict_to.first(); w != -1; w = restrict_to.next(w)) {
        if (!dominating.test(w) && !(t.in(w) & dominating).count())
            throw contract_error("domination coloring: vertex " + std::to_string(w) +
                                 " not dominated");
        if (!absorbing.test(w) && !(t.out(w) & absorbing).count())
            throw contract_error("domination coloring: vertex " + std::to_string(w) +
                                 " not absorbed");
    }

    DominationColoring dc;
    dc.coloring = Coloring(t.n());
    VertexSet special = dominating | absorbing;
    int next = 0;
    for (int w = special.first(); w != -1; w = special.next(w)) dc.coloring.set(w, next++);
    dc.private_span = next;

    for (int u = absorbing.first(); u != -1; u = absorbing.next(u)) {
        for (int w = dominating.first(); w != -1; w = dominating.next(w)) {
            if (u == w) continue;
            if (dc.coloring.covers(restrict_to)) break;
            Path p = shortest_path(t, scope, u, w);
            RegionColoring rc = color_path_region(t, scope, p, oracle);
            dc.coloring.absorb_shifted(rc.coloring,
                                       (rc.assignment.region & restrict_to) -
                                           dc.coloring.domain(),
                                       next);
            next += rc.span;
        }
    }
    if (!dc.coloring.covers(restrict_to))
        throw contract_error("domination coloring: restriction not covered");
    dc.span = next;
    dc.coloring.recount();
    return dc;
}

inline DominationColoring color_via_domination(const OrientedGraph& t, const VertexSet& scope,
                                               const VertexSet& dominating,
                                               const VertexSet& absorbing,
                                               const ArcOracle& oracle) {
    return color_via_domination(t, scope, scope, dominating, absorbing, oracle);
}

}  // namespace arcbound
