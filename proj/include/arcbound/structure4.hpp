#pragma once

// Heavy/light arc classification by cluster content of arc neighborhoods,
// cluster assembly from cliques of heavy arcs, trace splitting around a
// cluster, complete-pair extraction, backedge graphs of orderings, and the
// refinement that colors the light digraph and then each class through its
// backedge graph, recursing on lighter classifications.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chromatic.hpp"
#include "clusters.hpp"
#include "core.hpp"
#include "pipeline.hpp"

namespace arcbound {

// Witness-size schedule s(x): s(0) = 1, s(x) = x^2 * s(x-1) + x, memoized.
// A (k, s(k))-cluster is the certificate the classification searches for.
class ClusterSizeFn {
public:
    const bigint& operator()(int x) {
        if (x < 0) throw contract_error("cluster size schedule needs x >= 0");
        while (int(memo_.size()) <= x) {
            int i = int(memo_.size());
            memo_.push_back(bigint(i) * i * memo_.back() + i);
        }
        return memo_[static_cast<size_t>(x)];
    }

private:
    std::vector<bigint> memo_{bigint(1)};
};

inline bigint s_value(int x) {
    ClusterSizeFn s;
    return s(x);
}

// clust(c) = c * 2^{s(2c)} + s(2c) + 1: the chromatic threshold above which
// a 2c-cluster forces a complete pair. The power term outgrows memory past
// c = 3, hence the bit guard.
inline bigint clust_value(int c) {
    if (c < 0) throw contract_error("clust_value needs c >= 0");
    bigint s2 = s_value(2 * c);
    if (s2 > 8000000)
        throw budget_error("clust_value: 2^" + s2.str() + " exceeds the representable budget", 0);
    bigint power = bigint(1) << s2.convert_to<long long>();
    return c * power + s2 + 1;
}

// Effective witness size: the schedule value clipped to the search budget.
inline int effective_witness_size(const bigint& schedule, int ell_budget) {
    return schedule < ell_budget ? schedule.convert_to<int>() : ell_budget;
}

// Partition of a tournament's arcs at parameter t: an arc is heavy when its
// neighborhood carries a (t-1)-cluster within the clipped witness size,
// light otherwise. Flagged arcs are light only because the search ran out
// of nodes; every flagged arc is also listed in light.
struct ArcClassification {
    int t = 0;
    int witness_size = 0;
    std::vector<ArcRef> heavy;
    std::vector<ArcRef> light;
    std::vector<ArcRef> flagged;
    std::map<ArcRef, Cluster> witnesses;
    long long nodes = 0;

    bool exhaustive() const { return flagged.empty(); }
};

inline ArcClassification classify_arcs(const OrientedGraph& t, const VertexSet& scope, int param,
                                       const Budgets& budgets = Budgets{}) {
    if (param < 2) throw contract_error("classification needs t >= 2");
    if (!t.is_tournament_on(scope))
        throw contract_error("classification needs a tournament scope");
    ArcClassification cls;
    cls.t = param;
    cls.witness_size = effective_witness_size(s_value(param - 1), budgets.ell_budget);
    std::vector<ArcRef> all = t.arcs_within(scope);
    for (const ArcRef& e : all) {
        VertexSet nb = arc_neighborhood(t, e, scope);
        ClusterSearchResult r =
            find_cluster(t, nb, param - 1, cls.witness_size, budgets.cluster_node_budget);
        cls.nodes += r.nodes;
        if (r.status == SearchStatus::found) {
            cls.heavy.push_back(e);
            cls.witnesses.emplace(e, *r.cluster);
        } else {
            cls.light.push_back(e);
            if (r.status == SearchStatus::budget_exhausted) cls.flagged.push_back(e);
        }
    }
    if (cls.heavy.size() + cls.light.size() != all.size())
        throw contract_error("classification lost an arc");
    return cls;
}

inline ArcClassification classify_arcs(const OrientedGraph& t, int param,
                                       const Budgets& budgets = Budgets{}) {
    return classify_arcs(t, VertexSet::all(t.n()), param, budgets);
}

// Spanning subdigraph keeping only the classified light arcs.
inline OrientedGraph light_digraph(const OrientedGraph& t, const ArcClassification& cls) {
    OrientedGraph dl(t.n());
    for (const ArcRef& e : cls.light) dl.add_arc(e.from, e.to);
    return dl;
}

// Assembles a candidate |clique|-cluster from a clique of pairwise heavy
// arcs and their witness clusters: the union of the clique with every
// witness cannot be colored with |clique| - 1 colors, because same-colored
// clique endpoints would force their witness below its own target. Verified
// exactly when the assembly fits the budget.
inline Cluster extract_cluster_from_heavy_clique(const OrientedGraph& t, const VertexSet& clique,
                                                 const std::map<ArcRef, Cluster>& witnesses,
                                                 int exact_limit = 20) {
    int target = clique.count();
    if (target < 1) throw contract_error("heavy clique must be nonempty");
    VertexSet assembled = clique;
    for (int u = clique.first(); u != -1; u = clique.next(u)) {
        for (int v = clique.next(u); v != -1; v = clique.next(v)) {
            if (!t.adjacent(u, v))
                throw contract_error("clique pair " + std::to_string(u) + "," +
                                     std::to_string(v) + " is not adjacent");
            ArcRef e = t.has_arc(u, v) ? ArcRef{u, v} : ArcRef{v, u};
            auto it = witnesses.find(e);
            if (it == witnesses.end())
                throw contract_error("missing witness for arc " + std::to_string(e.from) + "->" +
                                     std::to_string(e.to));
            const VertexSet& w = it->second.members;
            if (w.empty())
                throw contract_error("empty witness for arc " + std::to_string(e.from) + "->" +
                                     std::to_string(e.to));
            if (!arc_neighborhood(t, e).contains_all(w))
                throw contract_error("witness leaves the neighborhood of " +
                                     std::to_string(e.from) + "->" + std::to_string(e.to));
            if (w.count() <= exact_limit &&
                dichromatic_exact(t, w, exact_limit).number < target - 1)
                throw contract_error("witness of " + std::to_string(e.from) + "->" +
                                     std::to_string(e.to) + " misses its target");
            assembled |= w;
        }
    }
    if (assembled.count() <= exact_limit &&
        dichromatic_exact(t, assembled, exact_limit).number < target)
        throw contract_error("assembled set misses the clique target");
    return Cluster{assembled, target, assembled.count()};
}

// One class of the trace partition: all members see the base set through
// the same out- and in-neighborhoods.
struct TraceClass {
    VertexSet out_trace;
    VertexSet in_trace;
    VertexSet members;
};

// Partitions scope minus the base by the pair (out-neighborhood in base,
// in-neighborhood in base). Classes appear in order of their smallest
// member; at most 2^|base| classes exist.
inline std::vector<TraceClass> split_by_trace(const OrientedGraph& d, const VertexSet& scope,
                                              const VertexSet& base) {
    if (!scope.contains_all(base)) throw contract_error("trace base must lie inside the scope");
    std::vector<TraceClass> classes;
    VertexSet rest = scope - base;
    for (int v = rest.first(); v != -1; v = rest.next(v)) {
        VertexSet o = d.out(v) & base;
        VertexSet i = d.in(v) & base;
        bool placed = false;
        for (TraceClass& c : classes) {
            if (c.out_trace == o && c.in_trace == i) {
                c.members.add(v);
                placed = true;
                break;
            }
        }
        if (!placed) {
            TraceClass c;
            c.out_trace = o;
            c.in_trace = i;
            c.members = VertexSet(d.n());
            c.members.add(v);
            classes.push_back(c);
        }
    }
    return classes;
}

inline std::vector<TraceClass> split_by_trace(const OrientedGraph& d, const VertexSet& base) {
    return split_by_trace(d, VertexSet::all(d.n()), base);
}

// Undirected graph of the arcs running from a later ordering position to an
// earlier one. Vertices keep their ambient ids; only ordered pairs can
// carry edges.
struct BackedgeGraph {
    std::vector<int> ordering;
    UndirectedGraph g;
    VertexSet scope;
};

inline BackedgeGraph backedge_graph(const OrientedGraph& d, const std::vector<int>& ordering) {
    BackedgeGraph bg;
    bg.ordering = ordering;
    bg.g = UndirectedGraph(d.n());
    bg.scope = VertexSet(d.n());
    for (int v : ordering) {
        if (v < 0 || v >= d.n()) throw contract_error("ordering vertex outside the universe");
        if (bg.scope.test(v))
            throw contract_error("ordering repeats vertex " + std::to_string(v));
        bg.scope.add(v);
    }
    for (size_t i = 0; i < ordering.size(); ++i)
        for (size_t j = i + 1; j < ordering.size(); ++j)
            if (d.has_arc(ordering[j], ordering[i])) bg.g.add_edge(ordering[i], ordering[j]);
    return bg;
}

// Two sets with every arc between them running a -> b.
struct CompletePair {
    VertexSet a;
    VertexSet b;
};

struct CompletePairResult {
    std::optional<CompletePair> pair;
    bool budget_limited = false;  // absence may be a search artifact
    std::vector<std::string> notes;
};

// Constructive pair extraction: find a 2c-cluster, split the rest by trace
// over it, certify some class at dichromatic number >= c, and hand back the
// class against whichever cluster half also reaches c. Trace equality makes
// the class complete toward both halves, so the returned pair is re-checked
// and unconditionally sound; absence is only as strong as the budgets.
inline CompletePairResult find_complete_pair(const OrientedGraph& t, const VertexSet& scope,
                                             int c, const Budgets& budgets = Budgets{}) {
    if (c < 0) throw contract_error("complete pair extraction needs c >= 0");
    if (!t.is_tournament_on(scope))
        throw contract_error("complete pair extraction needs a tournament scope");
    CompletePairResult res;
    if (c == 0) {
        res.pair = CompletePair{VertexSet(t.n()), VertexSet(t.n())};
        return res;
    }
    int ell_eff = effective_witness_size(s_value(2 * c), budgets.ell_budget);
    ClusterSearchResult cs =
        find_cluster(t, scope, 2 * c, ell_eff, budgets.cluster_node_budget);
    if (cs.status != SearchStatus::found) {
        res.budget_limited = (cs.status == SearchStatus::budget_exhausted);
        res.notes.push_back(res.budget_limited ? "cluster-search-budget" : "no-cluster");
        return res;
    }
    const VertexSet& base = cs.cluster->members;
    for (const TraceClass& cl : split_by_trace(t, scope, base)) {
        if (cl.members.count() > budgets.chi_exact_limit) {
            res.budget_limited = true;
            res.notes.push_back("class-above-exact-budget");
            continue;
        }
        if (dichromatic_exact(t, cl.members, budgets.chi_exact_limit).number < c) continue;
        int v = cl.members.first();
        VertexSet into = t.in(v) & base;
        VertexSet outof = t.out(v) & base;
        CompletePair pair;
        if (dichromatic_exact(t, into, std::max(1, into.count())).number >= c) {
            pair.a = into;
            pair.b = cl.members;
        } else if (dichromatic_exact(t, outof, std::max(1, outof.count())).number >= c) {
            pair.a = cl.members;
            pair.b = outof;
        } else {
            throw contract_error("both cluster halves miss the target");
        }
        for (int u = pair.a.first(); u != -1; u = pair.a.next(u))
            if (!t.out(u).contains_all(pair.b))
                throw contract_error("extracted pair is not complete");
        res.pair = pair;
        return res;
    }
    res.notes.push_back("no-class-reached-target");
    return res;
}

inline CompletePairResult find_complete_pair(const OrientedGraph& t, int c,
                                             const Budgets& budgets = Budgets{}) {
    return find_complete_pair(t, VertexSet::all(t.n()), c, budgets);
}

// Injected undirected chromatic solver; exactness travels with the answer
// because only exact values may certify a split.
struct GraphOracleResult {
    int number = 0;
    std::vector<int> color;
    bool exact = true;
};

using GraphOracle = std::function<GraphOracleResult(const UndirectedGraph&, const VertexSet&)>;

inline GraphOracle make_graph_oracle(int exact_limit) {
    return [exact_limit](const UndirectedGraph& g, const VertexSet& scope) -> GraphOracleResult {
        GraphOracleResult r;
        if (scope.count() <= exact_limit) {
            GraphColoringResult ex = graph_chromatic_exact(g, scope, exact_limit);
            r.number = ex.number;
            r.color = ex.color;
            return r;
        }
        r.color = graph_coloring_greedy(g, scope);
        for (int v = scope.first(); v != -1; v = scope.next(v))
            r.number = std::max(r.number, r.color[static_cast<size_t>(v)] + 1);
        r.exact = false;
        return r;
    };
}

// Result of the refinement: either a coloring of the scope, or a certified
// complete pair with both sides at dichromatic number >= c.
struct RefineOutcome {
    std::optional<CompletePair> split;
    Coloring coloring;
    int span = 0;
    TraceReport trace;

    RefineOutcome() : coloring(0) {}
};

namespace detail {

// Deliberately outside the error hierarchy: a found pair must unwind
// through the coloring pipeline's degradation handlers untouched.
struct SplitSignal {
    CompletePair pair;
};

// Kahn order picking the smallest eligible id each round; contract failure
// on a cycle.
inline std::vector<int> topo_min_id(const OrientedGraph& d, const VertexSet& scope) {
    std::vector<int> order;
    std::vector<int> indeg(static_cast<size_t>(d.n()), 0);
    for (int v = scope.first(); v != -1; v = scope.next(v))
        indeg[static_cast<size_t>(v)] = (d.in(v) & scope).count();
    VertexSet left = scope;
    int m = scope.count();
    for (int step = 0; step < m; ++step) {
        int pick = -1;
        for (int v = left.first(); v != -1; v = left.next(v)) {
            if (indeg[static_cast<size_t>(v)] == 0) {
                pick = v;
                break;
            }
        }
        if (pick == -1) throw contract_error("ordering requested on a cyclic scope");
        order.push_back(pick);
        left.remove(pick);
        (d.out(pick) & left).for_each([&](int w) { --indeg[static_cast<size_t>(w)]; });
    }
    return order;
}

}  // namespace detail

// Colors the light digraph with the arc-local pipeline, handing every light
// arc neighborhood to the next-lighter refinement (exact below parameter 2),
// then refines each class through its backedge graph: two components at
// chromatic number >= 2tc certify a complete pair via prefix extraction;
// otherwise the class is product-colored by the graph oracle. A pair found
// at any recursion depth is the answer for the whole call.
inline RefineOutcome light_color_then_refine(const OrientedGraph& t, const VertexSet& scope,
                                             int param, int c, const Budgets& budgets,
                                             const GraphOracle& graph_oracle) {
    if (c < 1) throw contract_error("refinement needs c >= 1");
    if (param < 2) throw contract_error("refinement needs t >= 2");
    if (!t.is_tournament_on(scope)) throw contract_error("refinement needs a tournament scope");
    RefineOutcome out;
    out.coloring = Coloring(t.n());
    TraceNode root;
    root.scope_label = detail::scope_label(scope);
    root.branch = "light-refine";
    root.t = param;

    ArcClassification cls = classify_arcs(t, scope, param, budgets);
    root.formula = "heavy=" + std::to_string(cls.heavy.size()) +
                   " light=" + std::to_string(cls.light.size());
    if (!cls.flagged.empty()) {
        root.flags.push_back("heaviness-budget-exhausted");
        out.trace.degraded = true;
    }
    OrientedGraph dl = light_digraph(t, cls);

    // Light arc neighborhoods carry no (param-1)-cluster, so the next-lighter
    // refinement colors them; below parameter 2 they are colored directly.
    bool neighborhood_inexact = false;
    ArcOracle oracle = [&](ArcRef e, const VertexSet& subset) -> Coloring {
        if (!arc_neighborhood(dl, e).contains_all(subset))
            throw contract_error("arc oracle called outside the arc neighborhood of " +
                                 std::to_string(e.from) + "->" + std::to_string(e.to));
        if (param - 1 >= 2) {
            RefineOutcome sub = light_color_then_refine(t, subset, param - 1, c, budgets,
                                                        graph_oracle);
            if (sub.split) throw detail::SplitSignal{*sub.split};
            if (sub.trace.degraded) neighborhood_inexact = true;
            return sub.coloring;
        }
        if (subset.count() <= budgets.chi_exact_limit)
            return dichromatic_exact(t, subset, budgets.chi_exact_limit).witness;
        neighborhood_inexact = true;
        return dichromatic_greedy(t, subset);
    };

    PipelineResult light;
    try {
        light = color_digraph_arc_local(dl, scope, budgets, &oracle);
    } catch (const detail::SplitSignal& sig) {
        out.split = sig.pair;
        root.branch = "split-extracted";
        out.trace.nodes.insert(out.trace.nodes.begin(), root);
        return out;
    }

    int c2 = 2 * param * c;
    int half_target = param * c;
    int next_base = 0;
    for (int color_id = 0; color_id < light.coloring.span(); ++color_id) {
        VertexSet cl(t.n());
        for (int v = scope.first(); v != -1; v = scope.next(v))
            if (light.coloring.color[static_cast<size_t>(v)] == color_id) cl.add(v);
        if (cl.empty()) continue;
        std::vector<int> ordering = detail::topo_min_id(dl, cl);
        for (size_t i = 0; i < ordering.size(); ++i)
            for (size_t j = i + 1; j < ordering.size(); ++j)
                if (dl.has_arc(ordering[j], ordering[i]))
                    throw contract_error("light arc runs backward in its class ordering");
        BackedgeGraph bg = backedge_graph(t, ordering);

        // Two components at the doubled target certify a pair: the prefix of
        // the first set at the halved target and the matching suffix of the
        // second see each other only through forward arcs.
        std::vector<VertexSet> rich;
        for (const VertexSet& comp : bg.g.components(cl)) {
            GraphOracleResult gr = graph_oracle(bg.g, comp);
            if (gr.exact && gr.number >= c2) rich.push_back(comp);
            if (rich.size() == 2) break;
        }
        if (rich.size() == 2) {
            auto prefix_at_target = [&](const VertexSet& sel) -> std::pair<int, VertexSet> {
                VertexSet cur(t.n());
                for (size_t i = 0; i < ordering.size(); ++i) {
                    if (!sel.test(ordering[i])) continue;
                    cur.add(ordering[i]);
                    if (cur.count() < half_target) continue;
                    GraphOracleResult gr = graph_oracle(bg.g, cur);
                    if (gr.exact && gr.number >= half_target) return {int(i) + 1, cur};
                }
                return {-1, cur};
            };
            VertexSet s1 = rich[0], s2 = rich[1];
            auto [a_pos, a_pre] = prefix_at_target(s1);
            auto [b_pos, b_pre] = prefix_at_target(s2);
            if (a_pos > b_pos) {
                std::swap(s1, s2);
                std::swap(a_pos, b_pos);
                std::swap(a_pre, b_pre);
            }
            if (a_pos > 0 && b_pos > 0) {
                CompletePair pair;
                pair.a = a_pre;
                pair.b = s2 - b_pre;
                bool sound = !pair.a.empty() && !pair.b.empty();
                for (int u = pair.a.first(); sound && u != -1; u = pair.a.next(u))
                    if (!t.out(u).contains_all(pair.b)) sound = false;
                auto side_reaches = [&](const VertexSet& side) -> bool {
                    if (side.count() <= budgets.chi_exact_limit)
                        return dichromatic_exact(t, side, budgets.chi_exact_limit).number >= c;
                    // Backedge sandwich: chromatic number at most clique number
                    // times dichromatic number, both computed exactly.
                    GraphOracleResult gr = graph_oracle(bg.g, side);
                    CliqueResult om = graph_clique_exact(bg.g, side);
                    if (!gr.exact || !om.exact || om.value == 0) return false;
                    return gr.number >= c * om.value;
                };
                if (sound && side_reaches(pair.a) && side_reaches(pair.b)) {
                    out.split = pair;
                    root.branch = "split-extracted";
                    root.chain_length = 0;
                    out.trace.nodes.insert(out.trace.nodes.begin(), root);
                    for (TraceNode n : light.trace.nodes) {
                        n.depth += 1;
                        out.trace.nodes.push_back(n);
                    }
                    out.trace.degraded |= light.trace.degraded;
                    return out;
                }
                root.flags.push_back("split-unverified");
                out.trace.degraded = true;
            } else {
                root.flags.push_back("split-prefix-missing");
                out.trace.degraded = true;
            }
        }

        GraphOracleResult gc = graph_oracle(bg.g, cl);
        if (!gc.exact) {
            root.flags.push_back("class-chromatic-inexact");
            out.trace.degraded = true;
        }
        for (int v = cl.first(); v != -1; v = cl.next(v))
            out.coloring.set(v, next_base + gc.color[static_cast<size_t>(v)]);
        root.palettes.push_back({"class-" + std::to_string(color_id), next_base, gc.number});
        next_base += gc.number;
    }
    out.span = next_base;
    if (neighborhood_inexact) {
        root.flags.push_back("neighborhood-coloring-inexact");
        out.trace.degraded = true;
    }
    if (!scope.empty() && !verify_coloring(t, out.coloring, scope)) {
        root.flags.push_back("refine-verification-failed");
        out.trace.degraded = true;
        out.coloring = dichromatic_greedy(t, scope);
        out.span = out.coloring.span();
    }
    root.span = out.span;
    out.trace.nodes.insert(out.trace.nodes.begin(), root);
    for (TraceNode n : light.trace.nodes) {
        n.depth += 1;
        out.trace.nodes.push_back(n);
    }
    out.trace.degraded |= light.trace.degraded;
    out.coloring.recount();
    return out;
}

inline RefineOutcome light_color_then_refine(const OrientedGraph& t, const VertexSet& scope,
                                             int param, int c,
                                             const Budgets& budgets = Budgets{}) {
    return light_color_then_refine(t, scope, param, c, budgets,
                                   make_graph_oracle(budgets.graph_exact_limit));
}

inline RefineOutcome light_color_then_refine(const OrientedGraph& t, int param, int c,
                                             const Budgets& budgets = Budgets{}) {
    return light_color_then_refine(t, VertexSet::all(t.n()), param, c, budgets);
}

}  // namespace arcbound
