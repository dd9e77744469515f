#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "chromatic.hpp"
#include "clusters.hpp"
#include "core.hpp"
#include "local_decomp.hpp"

namespace arcbound {

using bigint = boost::multiprecision::cpp_int;

// Search and exactness budgets for the coloring pipelines. ell_budget and
// K_budget stand in for the existential cluster-size and domination-size
// constants; everything else caps exact solvers before they fall back to
// greedy bounds.
struct Budgets {
    int chi_exact_limit = 20;
    int graph_exact_limit = 16;
    int alpha_exact_limit = 60;
    int dom_exact_limit = 26;
    int ell_budget = 8;
    int K_budget = 6;
    long long cluster_node_budget = 200000;
    int chain_retry_cap = 4;
    int depth_cap = 100;
    bool debug_checks = false;
};

// Color-count formulas evaluated with configured budgets substituted for the
// existential constants. Values explode quickly, hence big integers.
struct SymbolicBounds {
    int t = 0;
    int alpha = 1;
    int ell_budget = 8;
    int K_budget = 6;
    bigint g;      // one around-block palette for a chain endpoint
    bigint f;      // strong tournament total: two around blocks + endpoint join
    bigint d;      // per completed-arc-neighborhood total; jewels use k = d+1
    bigint dense;  // strong digraph total at this independence number

    static SymbolicBounds evaluate(int t, int alpha, int ell_budget, int K_budget) {
        if (t < 0 || alpha < 1 || ell_budget < 1 || K_budget < 1)
            throw contract_error("bounds need t >= 0, alpha >= 1, positive budgets");
        SymbolicBounds b;
        b.t = t;
        b.alpha = alpha;
        b.ell_budget = ell_budget;
        b.K_budget = K_budget;
        b.g = bigint(2) * ell_budget * t + bigint(5) * t * K_budget * K_budget;
        b.f = 2 * b.g + 5 * t;
        b.dense = b.f;
        b.d = t;  // at alpha = 1 arc neighborhoods need only t colors, so k = t+1
        for (int a = 2; a <= alpha; ++a) {
            bigint inner = 15 * b.dense + 10 * t + 2;
            b.d = 3 * b.dense + 2 * t;
            b.dense = 2 * ((1 + bigint(K_budget) * K_budget) * inner +
                           bigint(ell_budget) * (b.d + 1));
        }
        return b;
    }
};

inline SymbolicBounds evaluate_bounds(int t, int alpha, const Budgets& budgets = Budgets{}) {
    return SymbolicBounds::evaluate(t, alpha, budgets.ell_budget, budgets.K_budget);
}

struct PaletteEntry {
    std::string name;
    int base = 0;
    int size = 0;
};

struct TraceNode {
    int depth = 0;
    std::string scope_label;
    std::string branch;
    int t = -1;
    bool t_exact = true;
    int alpha = -1;
    bool alpha_exact = true;
    int chain_length = 0;
    int span = 0;
    std::string formula;
    std::vector<PaletteEntry> palettes;
    std::vector<std::string> flags;
};

struct TraceReport {
    std::vector<TraceNode> nodes;
    bool degraded = false;

    bool has_flag(const std::string& name) const {
        for (const TraceNode& n : nodes)
            for (const std::string& f : n.flags)
                if (f == name) return true;
        return false;
    }

    std::string to_text() const {
        std::ostringstream out;
        for (const TraceNode& n : nodes) {
            out << std::string(static_cast<size_t>(n.depth) * 2, ' ') << n.scope_label << " "
                << n.branch;
            if (n.t >= 0) out << " t=" << n.t << (n.t_exact ? "" : "+");
            if (n.alpha >= 0) out << " alpha=" << n.alpha << (n.alpha_exact ? "" : "+");
            if (n.chain_length > 0) out << " chain=" << n.chain_length;
            if (!n.formula.empty()) out << " " << n.formula;
            out << " span=" << n.span;
            for (const PaletteEntry& p : n.palettes)
                out << " [" << p.name << "@" << p.base << "+" << p.size << "]";
            for (const std::string& f : n.flags) out << " !" << f;
            out << "\n";
        }
        if (degraded) out << "degraded\n";
        return out.str();
    }
};

struct PipelineResult {
    Coloring coloring;
    int span = 0;
    TraceReport trace;

    PipelineResult() : coloring(0) {}
};

// A tournament extension of a digraph: every non-adjacent pair inside scope
// gets one filler arc. A filler u -> v is chosen so that either no original
// triangle sits on it (out(v) cap in(u) empty in the original) or both
// directions carry original triangles; ties go lower id -> higher id.
struct Completion {
    VertexSet scope;
    OrientedGraph tournament;
    std::vector<VertexSet> filler_out;
    long long filler_count = 0;

    Completion() : scope(0), tournament(0) {}

    bool is_filler(int u, int v) const { return filler_out[static_cast<size_t>(u)].test(v); }
};

inline Completion complete_to_tournament(const OrientedGraph& d, const VertexSet& scope) {
    Completion c;
    c.scope = scope;
    c.tournament = d.induced(scope);
    c.filler_out.assign(static_cast<size_t>(d.n()), VertexSet(d.n()));
    for (int u = scope.first(); u != -1; u = scope.next(u)) {
        for (int v = scope.next(u); v != -1; v = scope.next(v)) {
            if (d.adjacent(u, v)) continue;
            VertexSet on_uv = d.out(v) & d.in(u) & scope;  // original triangles on u -> v
            VertexSet on_vu = d.out(u) & d.in(v) & scope;  // original triangles on v -> u
            int from = u, to = v;
            if (on_uv.empty() && !on_vu.empty()) {
                from = u;
                to = v;
            } else if (on_vu.empty() && !on_uv.empty()) {
                from = v;
                to = u;
            }
            c.tournament.add_arc(from, to);
            c.filler_out[static_cast<size_t>(from)].add(to);
            ++c.filler_count;
        }
    }
    return c;
}

inline Completion complete_to_tournament(const OrientedGraph& d) {
    return complete_to_tournament(d, VertexSet::all(d.n()));
}

// Filler invariant: a filler arc u -> v either carries no original triangle,
// or both directions between u and v do.
inline bool completion_invariant_holds(const OrientedGraph& d, const Completion& c) {
    for (int u = c.scope.first(); u != -1; u = c.scope.next(u)) {
        const VertexSet& row = c.filler_out[static_cast<size_t>(u)];
        for (int v = row.first(); v != -1; v = row.next(v)) {
            VertexSet on = d.out(v) & d.in(u) & c.scope;
            VertexSet rev = d.out(u) & d.in(v) & c.scope;
            if (!on.empty() && rev.empty()) return false;
        }
    }
    return true;
}

// Colors a subset with classes acyclic in the reference digraph, compact
// palette starting at 0. The pipelines plug their own recursion in here.
using SubsetColorer = std::function<Coloring(const VertexSet&)>;

namespace detail {

struct LocalColoring {
    Coloring coloring;
    int span = 0;

    LocalColoring() : coloring(0) {}
    explicit LocalColoring(int n) : coloring(n) {}
};

inline std::string scope_label(const VertexSet& s) {
    std::ostringstream out;
    if (s.count() <= 10) {
        out << "{";
        bool sep = false;
        for (int v = s.first(); v != -1; v = s.next(v)) {
            if (sep) out << ",";
            out << v;
            sep = true;
        }
        out << "}";
    } else {
        int last = -1;
        for (int v = s.first(); v != -1; v = s.next(v)) last = v;
        out << "[" << s.count() << " verts, " << s.first() << ".." << last << "]";
    }
    return out.str();
}

}  // namespace detail

// Colors the completed arc neighborhood of e cut to restrict_to, classes
// acyclic in d. Corners of original triangles on e go to arc oracles (via a
// shared reroute corner w when e itself is filler); corners that touch e
// only through filler arcs are nonadjacent to one endpoint, so their
// independence number drops and they go to the subset colorer.
inline detail::LocalColoring color_completed_arc_neighborhood(
    const OrientedGraph& d, const Completion& comp, ArcRef e, const VertexSet& restrict_to,
    const ArcOracle& oracle, const SubsetColorer& recurse) {
    const OrientedGraph& t = comp.tournament;
    if (!t.has_arc(e.from, e.to))
        throw contract_error("completed arc coloring: not an arc of the completion");
    detail::LocalColoring out(d.n());
    VertexSet target = t.out(e.to) & t.in(e.from) & restrict_to;
    if (target.empty()) return out;

    VertexSet corners(d.n());
    for (int x = target.first(); x != -1; x = target.next(x))
        if (d.has_arc(e.to, x) && d.has_arc(x, e.from)) corners.add(x);
    VertexSet rest = target - corners;
    VertexSet tail_fill(d.n());
    for (int x = rest.first(); x != -1; x = rest.next(x))
        if (comp.is_filler(x, e.from)) tail_fill.add(x);
    VertexSet head_fill = rest - tail_fill;

    int base = 0;
    if (!corners.empty()) {
        if (!comp.is_filler(e.from, e.to)) {
            Coloring c = oracle(e, corners);
            out.coloring.absorb_shifted(c, corners, base);
            base += c.span();
        } else {
            VertexSet w_opts = d.out(e.from) & d.in(e.to) & comp.scope;
            if (w_opts.empty())
                throw contract_error("completed arc coloring: filler invariant broken");
            int w = w_opts.first();
            VertexSet p1(d.n()), p2(d.n());
            for (int x = corners.first(); x != -1; x = corners.next(x)) {
                if (d.has_arc(w, x))
                    p1.add(x);
                else if (d.has_arc(x, w))
                    p2.add(x);
            }
            VertexSet p3 = corners - p1 - p2;
            if (!p1.empty()) {
                Coloring c = oracle(ArcRef{e.from, w}, p1);
                out.coloring.absorb_shifted(c, p1, base);
                base += c.span();
            }
            if (!p2.empty()) {
                Coloring c = oracle(ArcRef{w, e.to}, p2);
                out.coloring.absorb_shifted(c, p2, base);
                base += c.span();
            }
            if (!p3.empty()) {
                Coloring c = recurse(p3);
                out.coloring.absorb_shifted(c, p3, base);
                base += c.span();
            }
        }
    }
    if (!tail_fill.empty()) {
        Coloring c = recurse(tail_fill);
        out.coloring.absorb_shifted(c, tail_fill, base);
        base += c.span();
    }
    if (!head_fill.empty()) {
        Coloring c = recurse(head_fill);
        out.coloring.absorb_shifted(c, head_fill, base);
        base += c.span();
    }
    out.span = base;
    return out;
}

// Colors the completed between-set in(u) cap out(v) cut to restrict_to,
// classes acyclic in d. Targets are sliced along a shortest completed path
// u -> v by the last path vertex they beat; slices are completed arc
// neighborhoods and share five rotating uniform-width palettes, so two
// same-colored slices sit at least five arcs apart, too far for any
// completed arc to run forward between them.
inline detail::LocalColoring color_between_in_completion(
    const OrientedGraph& d, const Completion& comp, const VertexSet& scope, int u, int v,
    const VertexSet& restrict_to, const ArcOracle& oracle, const SubsetColorer& recurse,
    bool debug_checks = false) {
    const OrientedGraph& t = comp.tournament;
    detail::LocalColoring out(d.n());
    VertexSet target = t.in(u) & t.out(v) & restrict_to;
    if (target.empty()) return out;
    Path p = shortest_path(t, scope, u, v);
    int k = p.k();
    std::vector<VertexSet> slices(static_cast<size_t>(k) + 1, VertexSet(d.n()));
    for (int x = target.first(); x != -1; x = target.next(x)) {
        int last = -1;
        for (int i = 0; i <= k; ++i)
            if (t.has_arc(x, p.verts[static_cast<size_t>(i)])) last = i;
        if (last < 0 || last >= k)
            throw contract_error("between coloring: straddle index out of range");
        if (!t.has_arc(p.verts[static_cast<size_t>(last) + 1], x))
            throw contract_error("between coloring: straddle arc missing");
        slices[static_cast<size_t>(last) + 1].add(x);
    }
    if (debug_checks) {
        for (int i = 1; i <= k; ++i)
            for (int j = i + 5; j <= k; ++j)
                for (int x = slices[static_cast<size_t>(i)].first(); x != -1;
                     x = slices[static_cast<size_t>(i)].next(x))
                    if (d.out(x).intersects(slices[static_cast<size_t>(j)]))
                        throw contract_error("between coloring: forward arc skips five slices");
    }
    std::vector<Coloring> cols;
    std::vector<int> idx;
    int width = 0;
    for (int i = 1; i <= k; ++i) {
        if (slices[static_cast<size_t>(i)].empty()) continue;
        detail::LocalColoring lc = color_completed_arc_neighborhood(
            d, comp, p.arc(i), slices[static_cast<size_t>(i)], oracle, recurse);
        width = std::max(width, lc.span);
        cols.push_back(lc.coloring);
        idx.push_back(i);
    }
    for (size_t j = 0; j < cols.size(); ++j) {
        int base = (idx[j] % 5) * width;
        out.coloring.absorb_shifted(cols[j], slices[static_cast<size_t>(idx[j])], base);
        out.span = std::max(out.span, base + width);
    }
    return out;
}

// Colors restrict_to inside a completed strong scope from a dominating and
// an absorbing set of it (domination read in d): privates for members, then
// one between palette per (absorber, dominator) pair, first palette wins.
inline detail::LocalColoring color_completed_domination(
    const OrientedGraph& d, const Completion& comp, const VertexSet& scope,
    const VertexSet& restrict_to, const VertexSet& dominating, const VertexSet& absorbing,
    const ArcOracle& oracle, const SubsetColorer& recurse, bool debug_checks = false) {
    if (!scope.contains_all(restrict_to) || !restrict_to.contains_all(dominating) ||
        !restrict_to.contains_all(absorbing))
        throw contract_error("completed domination: sets out of place");
    for (int w = restrict_to.first(); w != -1; w = restrict_to.next(w)) {
        if (!dominating.test(w) && !(d.in(w) & dominating).count())
            throw contract_error("completed domination: vertex " + std::to_string(w) +
                                 " not dominated");
        if (!absorbing.test(w) && !(d.out(w) & absorbing).count())
            throw contract_error("completed domination: vertex " + std::to_string(w) +
                                 " not absorbed");
    }
    detail::LocalColoring out(d.n());
    VertexSet special = dominating | absorbing;
    int base = 0;
    for (int w = special.first(); w != -1; w = special.next(w)) out.coloring.set(w, base++);
    for (int u = absorbing.first(); u != -1; u = absorbing.next(u)) {
        for (int w = dominating.first(); w != -1; w = dominating.next(w)) {
            if (u == w) continue;
            if (out.coloring.covers(restrict_to)) break;
            detail::LocalColoring bc =
                color_between_in_completion(d, comp, scope, u, w,
                                            restrict_to - out.coloring.domain(), oracle,
                                            recurse, debug_checks);
            VertexSet hit = bc.coloring.domain();
            out.coloring.absorb_shifted(bc.coloring, hit, base);
            base += bc.span;
        }
        if (out.coloring.covers(restrict_to)) break;
    }
    if (!out.coloring.covers(restrict_to))
        throw contract_error("completed domination: restriction not covered");
    out.span = base;
    out.coloring.recount();
    return out;
}

namespace detail {

// One side of a chain block in a plain tournament: the vertices complete
// toward it (colored by domination over that set alone, with the chain
// extended and the step retried if a cluster still hides there), the mixed
// vertices split along a spanning cycle of the block, and the block itself.
inline LocalColoring around_block_tournament(const OrientedGraph& t, const VertexSet& part,
                                             JewelChain& chain, bool incoming_side, int k,
                                             const Budgets& budgets, const ArcOracle& oracle,
                                             TraceNode& node, TraceReport& trace,
                                             const char* tag) {
    LocalColoring out(t.n());
    int base = 0;
    VertexSet block = incoming_side ? chain.blocks.front().members : chain.blocks.back().members;
    for (int round = 0;; ++round) {
        block = incoming_side ? chain.blocks.front().members : chain.blocks.back().members;
        VertexSet pure = incoming_side ? complete_to(t, part, block, block)
                                       : complete_from(t, part, block, block);
        if (pure.empty()) break;
        ClusterOrDomination cd =
            cluster_or_domination(t, pure, k, budgets.ell_budget, budgets.cluster_node_budget,
                                  budgets.dom_exact_limit);
        if (cd.cluster) {
            if (round >= budgets.chain_retry_cap)
                throw contract_error("around block: side keeps producing clusters");
            if (incoming_side)
                chain.blocks.insert(chain.blocks.begin(), *cd.cluster);
            else
                chain.blocks.push_back(*cd.cluster);
            node.flags.push_back(std::string(tag) + "-side-regrown");
            continue;
        }
        if (!cd.exhaustive) {
            node.flags.push_back(std::string(tag) + "-side-search-budget");
            trace.degraded = true;
        }
        const DominationPair& pair = *cd.pair;
        if (pair.dominating.set.count() > budgets.K_budget ||
            pair.absorbing.set.count() > budgets.K_budget) {
            node.flags.push_back(std::string(tag) + "-domination-above-K");
            trace.degraded = true;
        }
        if (!pair.dominating.exact || !pair.absorbing.exact) {
            node.flags.push_back(std::string(tag) + "-domination-greedy");
            trace.degraded = true;
        }
        DominationColoring dc = color_via_domination(t, part, pure, pair.dominating.set,
                                                     pair.absorbing.set, oracle);
        out.coloring.absorb_shifted(dc.coloring, pure, base);
        node.palettes.push_back({std::string(tag) + "-complete", base, dc.span});
        base += dc.span;
        break;
    }
    VertexSet mixed = punch_neighborhood(t, block) & part;
    if (!mixed.empty()) {
        std::vector<int> cyc = hamilton_cycle(t, block);
        size_t m = cyc.size();
        std::vector<VertexSet> slices(m, VertexSet(t.n()));
        for (int x = mixed.first(); x != -1; x = mixed.next(x)) {
            bool placed = false;
            for (size_t a = 0; a < m && !placed; ++a) {
                int ha = cyc[a], hb = cyc[(a + 1) % m];
                if (t.has_arc(x, ha) && t.has_arc(hb, x)) {
                    slices[a].add(x);
                    placed = true;
                }
            }
            if (!placed) throw contract_error("around block: mixed vertex straddles no cycle arc");
        }
        int mixed_base = base;
        for (size_t a = 0; a < m; ++a) {
            if (slices[a].empty()) continue;
            Coloring c = oracle(ArcRef{cyc[a], cyc[(a + 1) % m]}, slices[a]);
            out.coloring.absorb_shifted(c, slices[a], base);
            base += c.span();
        }
        node.palettes.push_back({std::string(tag) + "-mixed", mixed_base, base - mixed_base});
    }
    int priv_base = base;
    for (int x = block.first(); x != -1; x = block.next(x)) out.coloring.set(x, base++);
    node.palettes.push_back({std::string(tag) + "-block", priv_base, base - priv_base});
    out.span = base;
    return out;
}

inline LocalColoring tournament_part_color(const OrientedGraph& t, const VertexSet& part,
                                           const Budgets& budgets, TraceReport& trace,
                                           int depth, const ArcOracle* external_oracle = nullptr) {
    TraceNode node;
    node.depth = depth;
    node.scope_label = scope_label(part);
    trace.nodes.emplace_back();
    size_t slot = trace.nodes.size() - 1;
    LocalColoring result(t.n());
    try {
        if (part.count() == 1) {
            node.branch = "singleton";
            result.coloring.set(part.first(), 0);
            result.span = 1;
        } else {
            bool oracle_degraded = false;
            ArcOracle oracle = external_oracle
                                   ? *external_oracle
                                   : make_arc_oracle(t, budgets.chi_exact_limit, &oracle_degraded);
            ArcBoundedness ab = arc_boundedness(t, part, budgets.chi_exact_limit);
            node.t = ab.t;
            node.t_exact = ab.exact;
            int k = ab.t + 1;
            ClusterOrDomination cd =
                cluster_or_domination(t, part, k, budgets.ell_budget,
                                      budgets.cluster_node_budget, budgets.dom_exact_limit);
            if (!cd.exhaustive) {
                node.flags.push_back("cluster-search-budget");
                trace.degraded = true;
            }
            if (cd.pair) {
                node.branch = "domination";
                const DominationPair& pair = *cd.pair;
                if (pair.dominating.set.count() > budgets.K_budget ||
                    pair.absorbing.set.count() > budgets.K_budget) {
                    node.flags.push_back("domination-above-K");
                    trace.degraded = true;
                }
                if (!pair.dominating.exact || !pair.absorbing.exact) {
                    node.flags.push_back("domination-greedy");
                    trace.degraded = true;
                }
                DominationColoring dc = color_via_domination(
                    t, part, pair.dominating.set, pair.absorbing.set, oracle);
                result.coloring = dc.coloring;
                result.span = dc.span;
                node.palettes.push_back({"privates", 0, dc.private_span});
                node.palettes.push_back({"pair-regions", dc.private_span,
                                         dc.span - dc.private_span});
            } else {
                node.branch = "chain";
                try {
                    JewelChain chain = grow_jewel_chain(t, t, part, k, budgets.ell_budget,
                                                        budgets.cluster_node_budget);
                    if (chain.blocks.empty())
                        throw contract_error("chain branch: cluster vanished between searches");
                    if (!chain.front_exhaustive || !chain.back_exhaustive) {
                        node.flags.push_back("chain-growth-budget");
                        trace.degraded = true;
                    }
                    ChainForwardReport fwd = assert_chain_forward(t, chain);
                    if (!fwd.ok)
                        throw contract_error("chain branch: backward arc, measured width too low");
                    LocalColoring in_side = around_block_tournament(
                        t, part, chain, true, k, budgets, oracle, node, trace, "front");
                    LocalColoring out_side = around_block_tournament(
                        t, part, chain, false, k, budgets, oracle, node, trace, "back");
                    node.chain_length = static_cast<int>(chain.blocks.size());
                    if (!assert_chain_forward(t, chain).ok)
                        throw contract_error("chain branch: extension broke forward order");
                    VertexSet x1 = chain.blocks.front().members;
                    VertexSet xp = chain.blocks.back().members;
                    EndpointColoring ec =
                        color_via_endpoints(t, part, xp.first(), x1.first(), out_side.coloring,
                                            in_side.coloring, oracle);
                    result.coloring = ec.coloring;
                    result.span = ec.span;
                    node.palettes.push_back({"join-region", 0, ec.region_span});
                    node.palettes.push_back({"out-side", ec.region_span, ec.out_span});
                    node.palettes.push_back({"in-side", ec.region_span + ec.out_span,
                                             ec.in_span});
                } catch (const error& ex) {
                    // degenerate or budget-broken chains: domination may still
                    // be small here even though the dichotomy promises nothing
                    node.branch = "chain-domination-rescue";
                    node.palettes.clear();
                    node.flags.push_back(ex.what());
                    trace.degraded = true;
                    SetSearchResult dom = dominating_set(t, part, budgets.dom_exact_limit);
                    SetSearchResult abs = absorbing_set(t, part, budgets.dom_exact_limit);
                    DominationColoring dc =
                        color_via_domination(t, part, dom.set, abs.set, oracle);
                    result.coloring = dc.coloring;
                    result.span = dc.span;
                    node.palettes.push_back({"privates", 0, dc.private_span});
                    node.palettes.push_back({"pair-regions", dc.private_span,
                                             dc.span - dc.private_span});
                }
            }
            if (oracle_degraded) {
                node.flags.push_back("arc-oracle-greedy");
                trace.degraded = true;
            }
            if (!ab.exact) trace.degraded = true;
        }
    } catch (const error& ex) {
        node.branch = "greedy-fallback";
        node.flags.push_back(ex.what());
        node.palettes.clear();
        trace.degraded = true;
        result.coloring = dichromatic_greedy(t, part);
        result.span = result.coloring.span();
    }
    node.span = result.span;
    trace.nodes[slot] = node;
    return result;
}

}  // namespace detail

inline PipelineResult color_tournament_arc_local(const OrientedGraph& t, const VertexSet& scope,
                                                 const Budgets& budgets = Budgets{}) {
    if (!t.is_tournament_on(scope))
        throw contract_error("tournament pipeline: scope does not induce a tournament");
    PipelineResult res;
    res.coloring = Coloring(t.n());
    for (const VertexSet& part : scc_decompose(t, scope)) {
        detail::LocalColoring lc = detail::tournament_part_color(t, part, budgets, res.trace, 0);
        for (int v = part.first(); v != -1; v = part.next(v))
            res.coloring.set(v, lc.coloring.color[static_cast<size_t>(v)]);
        res.span = std::max(res.span, lc.span);
    }
    if (!scope.empty() && !verify_coloring(t, res.coloring, scope)) {
        TraceNode n;
        n.scope_label = detail::scope_label(scope);
        n.branch = "whole-scope-greedy";
        n.flags.push_back("final-verification-failed");
        res.trace.degraded = true;
        res.coloring = dichromatic_greedy(t, scope);
        res.span = res.coloring.span();
        n.span = res.span;
        res.trace.nodes.push_back(n);
    }
    if (!scope.empty()) res.coloring = compress_coloring(t, scope, res.coloring);
    res.coloring.recount();
    return res;
}

inline PipelineResult color_tournament_arc_local(const OrientedGraph& t,
                                                 const Budgets& budgets = Budgets{}) {
    return color_tournament_arc_local(t, VertexSet::all(t.n()), budgets);
}

namespace detail {

LocalColoring digraph_scope_color(const OrientedGraph& d, const VertexSet& scope,
                                  const Budgets& budgets, TraceReport& trace, int depth,
                                  const ArcOracle* external_oracle = nullptr);

// One side of a chain block in a completion: the vertices complete toward it
// in the completed tournament (colored by completed domination, retried when
// a cluster still hides there), the mixed vertices split along a spanning
// completed cycle of the block, and the block itself.
inline LocalColoring around_block_completed(const OrientedGraph& d, const Completion& comp,
                                            const VertexSet& part, JewelChain& chain,
                                            bool incoming_side, int k, const Budgets& budgets,
                                            const ArcOracle& oracle, const SubsetColorer& recurse,
                                            TraceNode& node, TraceReport& trace,
                                            const char* tag) {
    const OrientedGraph& t = comp.tournament;
    LocalColoring out(d.n());
    int base = 0;
    VertexSet block = incoming_side ? chain.blocks.front().members : chain.blocks.back().members;
    for (int round = 0;; ++round) {
        block = incoming_side ? chain.blocks.front().members : chain.blocks.back().members;
        VertexSet pure = incoming_side ? complete_to(t, part, block, block)
                                       : complete_from(t, part, block, block);
        if (pure.empty()) break;
        ClusterOrDomination cd =
            cluster_or_domination(d, pure, k, budgets.ell_budget, budgets.cluster_node_budget,
                                  budgets.dom_exact_limit);
        if (cd.cluster) {
            if (round >= budgets.chain_retry_cap)
                throw contract_error("around block: side keeps producing clusters");
            if (incoming_side)
                chain.blocks.insert(chain.blocks.begin(), *cd.cluster);
            else
                chain.blocks.push_back(*cd.cluster);
            node.flags.push_back(std::string(tag) + "-side-regrown");
            continue;
        }
        if (!cd.exhaustive) {
            node.flags.push_back(std::string(tag) + "-side-search-budget");
            trace.degraded = true;
        }
        const DominationPair& pair = *cd.pair;
        if (pair.dominating.set.count() > budgets.K_budget ||
            pair.absorbing.set.count() > budgets.K_budget) {
            node.flags.push_back(std::string(tag) + "-domination-above-K");
            trace.degraded = true;
        }
        if (!pair.dominating.exact || !pair.absorbing.exact) {
            node.flags.push_back(std::string(tag) + "-domination-greedy");
            trace.degraded = true;
        }
        LocalColoring dc = color_completed_domination(d, comp, part, pure, pair.dominating.set,
                                                      pair.absorbing.set, oracle, recurse,
                                                      budgets.debug_checks);
        out.coloring.absorb_shifted(dc.coloring, pure, base);
        node.palettes.push_back({std::string(tag) + "-complete", base, dc.span});
        base += dc.span;
        break;
    }
    VertexSet mixed = punch_neighborhood(t, block) & part;
    if (!mixed.empty()) {
        std::vector<int> cyc = hamilton_cycle(t, block);
        size_t m = cyc.size();
        std::vector<VertexSet> slices(m, VertexSet(d.n()));
        for (int x = mixed.first(); x != -1; x = mixed.next(x)) {
            bool placed = false;
            for (size_t a = 0; a < m && !placed; ++a) {
                int ha = cyc[a], hb = cyc[(a + 1) % m];
                if (t.has_arc(x, ha) && t.has_arc(hb, x)) {
                    slices[a].add(x);
                    placed = true;
                }
            }
            if (!placed) throw contract_error("around block: mixed vertex straddles no cycle arc");
        }
        int mixed_base = base;
        for (size_t a = 0; a < m; ++a) {
            if (slices[a].empty()) continue;
            LocalColoring lc = color_completed_arc_neighborhood(
                d, comp, ArcRef{cyc[a], cyc[(a + 1) % m]}, slices[a], oracle, recurse);
            out.coloring.absorb_shifted(lc.coloring, slices[a], base);
            base += lc.span;
        }
        node.palettes.push_back({std::string(tag) + "-mixed", mixed_base, base - mixed_base});
    }
    int priv_base = base;
    for (int x = block.first(); x != -1; x = block.next(x)) out.coloring.set(x, base++);
    node.palettes.push_back({std::string(tag) + "-block", priv_base, base - priv_base});
    out.span = base;
    return out;
}

inline LocalColoring digraph_part_color(const OrientedGraph& d, const VertexSet& part,
                                        const Budgets& budgets, TraceReport& trace, int depth,
                                        const ArcOracle* external_oracle = nullptr) {
    if (d.is_tournament_on(part))
        return tournament_part_color(d, part, budgets, trace, depth, external_oracle);
    TraceNode node;
    node.depth = depth;
    node.scope_label = scope_label(part);
    trace.nodes.emplace_back();
    size_t slot = trace.nodes.size() - 1;
    LocalColoring result(d.n());
    try {
        if (depth > budgets.depth_cap)
            throw budget_error("recursion depth cap reached",
                               dichromatic_greedy(d, part).color_count);
        bool oracle_degraded = false;
        ArcOracle oracle = external_oracle
                               ? *external_oracle
                               : make_arc_oracle(d, budgets.chi_exact_limit, &oracle_degraded);
        ArcBoundedness ab = arc_boundedness(d, part, budgets.chi_exact_limit);
        node.t = ab.t;
        node.t_exact = ab.exact;
        IndependenceResult ir = independence_number(d, part, budgets.alpha_exact_limit);
        node.alpha = ir.value;
        node.alpha_exact = ir.exact;
        SymbolicBounds sb = SymbolicBounds::evaluate(ab.t, std::max(ir.value, 1),
                                                     budgets.ell_budget, budgets.K_budget);
        Completion comp = complete_to_tournament(d, part);
        if (budgets.debug_checks && !completion_invariant_holds(d, comp))
            throw contract_error("completion filler invariant failed");

        SubsetColorer recurse = [&](const VertexSet& sub) -> Coloring {
            if (budgets.debug_checks && ir.exact && !sub.empty()) {
                IndependenceResult sir = independence_number(d, sub, budgets.alpha_exact_limit);
                if (sir.exact && sir.value >= ir.value)
                    throw contract_error("recursion did not reduce independence");
            }
            LocalColoring lc = digraph_scope_color(d, sub, budgets, trace, depth + 1,
                                                   external_oracle);
            return lc.coloring;
        };

        bool cluster_fits = 2 * (sb.d + 1) - 1 <= sb.ell_budget;
        node.formula = "d=" + sb.d.str() + " dense=" + sb.dense.str();
        ClusterOrDomination cd;
        if (!cluster_fits) {
            node.flags.push_back("cluster-absent-by-size");
            cd.cluster.reset();
            cd.pair = DominationPair{dominating_set(d, part, budgets.dom_exact_limit),
                                     absorbing_set(d, part, budgets.dom_exact_limit)};
            cd.exhaustive = true;
        } else {
            int k_small = static_cast<int>(sb.d) + 1;
            cd = cluster_or_domination(d, part, k_small, budgets.ell_budget,
                                       budgets.cluster_node_budget, budgets.dom_exact_limit);
            if (!cd.exhaustive) {
                node.flags.push_back("cluster-search-budget");
                trace.degraded = true;
            }
        }
        if (cd.pair) {
            node.branch = "domination";
            const DominationPair& pair = *cd.pair;
            if (pair.dominating.set.count() > budgets.K_budget ||
                pair.absorbing.set.count() > budgets.K_budget) {
                node.flags.push_back("domination-above-K");
                trace.degraded = true;
            }
            if (!pair.dominating.exact || !pair.absorbing.exact) {
                node.flags.push_back("domination-greedy");
                trace.degraded = true;
            }
            LocalColoring dc = color_completed_domination(d, comp, part, part,
                                                          pair.dominating.set,
                                                          pair.absorbing.set, oracle, recurse,
                                                          budgets.debug_checks);
            result = dc;
            node.palettes.push_back({"privates", 0,
                                     static_cast<int>((pair.dominating.set |
                                                       pair.absorbing.set).count())});
        } else {
            node.branch = "chain";
            try {
                int k_small = static_cast<int>(sb.d) + 1;
                JewelChain chain = grow_jewel_chain(comp.tournament, d, part, k_small,
                                                    budgets.ell_budget,
                                                    budgets.cluster_node_budget);
                if (chain.blocks.empty())
                    throw contract_error("chain branch: cluster vanished between searches");
                if (!chain.front_exhaustive || !chain.back_exhaustive) {
                    node.flags.push_back("chain-growth-budget");
                    trace.degraded = true;
                }
                ChainForwardReport fwd = assert_chain_forward(comp.tournament, chain);
                if (!fwd.ok)
                    throw contract_error("chain branch: backward arc, measured width too low");
                LocalColoring in_side =
                    around_block_completed(d, comp, part, chain, true, k_small, budgets,
                                           oracle, recurse, node, trace, "front");
                LocalColoring out_side =
                    around_block_completed(d, comp, part, chain, false, k_small, budgets,
                                           oracle, recurse, node, trace, "back");
                node.chain_length = static_cast<int>(chain.blocks.size());
                if (!assert_chain_forward(comp.tournament, chain).ok)
                    throw contract_error("chain branch: extension broke forward order");
                VertexSet x1 = chain.blocks.front().members;
                VertexSet xp = chain.blocks.back().members;
                int u = xp.first();
                int v = x1.first();
                LocalColoring between = color_between_in_completion(
                    d, comp, part, u, v, part, oracle, recurse, budgets.debug_checks);
                result.coloring = between.coloring;
                int base = between.span;
                node.palettes.push_back({"join-between", 0, between.span});
                VertexSet outs = (comp.tournament.out(u) & part) - result.coloring.domain();
                result.coloring.absorb_shifted(out_side.coloring, outs, base);
                node.palettes.push_back({"out-side", base, out_side.span});
                base += out_side.span;
                VertexSet ins = (comp.tournament.in(v) & part) - result.coloring.domain();
                result.coloring.absorb_shifted(in_side.coloring, ins, base);
                node.palettes.push_back({"in-side", base, in_side.span});
                base += in_side.span;
                int priv_base = base;
                if (!result.coloring.domain().test(u)) result.coloring.set(u, base++);
                if (!result.coloring.domain().test(v)) result.coloring.set(v, base++);
                if (base > priv_base)
                    node.palettes.push_back({"join-ends", priv_base, base - priv_base});
                if (!result.coloring.covers(part))
                    throw contract_error("chain branch: part not covered after endpoint join");
                result.span = base;
            } catch (const error& ex) {
                node.branch = "chain-domination-rescue";
                node.palettes.clear();
                node.flags.push_back(ex.what());
                trace.degraded = true;
                SetSearchResult dom = dominating_set(d, part, budgets.dom_exact_limit);
                SetSearchResult abs = absorbing_set(d, part, budgets.dom_exact_limit);
                LocalColoring dc = color_completed_domination(d, comp, part, part, dom.set,
                                                              abs.set, oracle, recurse,
                                                              budgets.debug_checks);
                result = dc;
                node.palettes.push_back(
                    {"privates", 0, static_cast<int>((dom.set | abs.set).count())});
            }
        }
        if (oracle_degraded) {
            node.flags.push_back("arc-oracle-greedy");
            trace.degraded = true;
        }
        if (!ab.exact || !ir.exact) trace.degraded = true;
    } catch (const error& ex) {
        node.branch = "greedy-fallback";
        node.flags.push_back(ex.what());
        node.palettes.clear();
        trace.degraded = true;
        result.coloring = dichromatic_greedy(d, part);
        result.span = result.coloring.span();
    }
    node.span = result.span;
    trace.nodes[slot] = node;
    return result;
}

inline LocalColoring digraph_scope_color(const OrientedGraph& d, const VertexSet& scope,
                                         const Budgets& budgets, TraceReport& trace, int depth,
                                         const ArcOracle* external_oracle) {
    LocalColoring merged(d.n());
    for (const VertexSet& part : scc_decompose(d, scope)) {
        LocalColoring lc = digraph_part_color(d, part, budgets, trace, depth, external_oracle);
        for (int v = part.first(); v != -1; v = part.next(v))
            merged.coloring.set(v, lc.coloring.color[static_cast<size_t>(v)]);
        merged.span = std::max(merged.span, lc.span);
    }
    return merged;
}

}  // namespace detail

inline PipelineResult color_digraph_arc_local(const OrientedGraph& d, const VertexSet& scope,
                                              const Budgets& budgets = Budgets{},
                                              const ArcOracle* arc_oracle = nullptr) {
    PipelineResult res;
    detail::LocalColoring lc =
        detail::digraph_scope_color(d, scope, budgets, res.trace, 0, arc_oracle);
    res.coloring = lc.coloring;
    res.span = lc.span;
    if (!scope.empty() && !verify_coloring(d, res.coloring, scope)) {
        TraceNode n;
        n.scope_label = detail::scope_label(scope);
        n.branch = "whole-scope-greedy";
        n.flags.push_back("final-verification-failed");
        res.trace.degraded = true;
        res.coloring = dichromatic_greedy(d, scope);
        res.span = res.coloring.span();
        n.span = res.span;
        res.trace.nodes.push_back(n);
    }
    if (!scope.empty()) res.coloring = compress_coloring(d, scope, res.coloring);
    res.coloring.recount();
    return res;
}

inline PipelineResult color_digraph_arc_local(const OrientedGraph& d,
                                              const Budgets& budgets = Budgets{}) {
    return color_digraph_arc_local(d, VertexSet::all(d.n()), budgets);
}

}  // namespace arcbound
