// Command line front end. Exit codes: 0 success, 2 answered under budget
// degradation, 1 error (bad input, bad arguments, violated contract).

#include <arcbound/clusters.hpp>
#include <arcbound/generate.hpp>
#include <arcbound/io.hpp>
#include <arcbound/local_decomp.hpp>
#include <arcbound/pipeline.hpp>
#include <arcbound/structure4.hpp>

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace arcbound;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kDegraded = 2;

OrientedGraph load_digraph(const std::string& path) {
    if (path == "-") return parse_digraph(std::cin);
    std::ifstream in(path);
    if (!in) throw contract_error("cannot open " + path);
    return parse_digraph(in);
}

Coloring load_coloring(const std::string& path) {
    if (path == "-") return parse_coloring(std::cin);
    std::ifstream in(path);
    if (!in) throw contract_error("cannot open " + path);
    return parse_coloring(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw contract_error("cannot write " + path);
    out << text;
}

std::string fmt_set(const VertexSet& s) {
    if (s.empty()) return "-";
    std::string out;
    for (int v = s.first(); v != -1; v = s.next(v)) {
        if (!out.empty()) out += ",";
        out += std::to_string(v);
    }
    return out;
}

std::string fmt_cycle(const std::vector<int>& cycle) {
    std::string out;
    for (int v : cycle) {
        if (!out.empty()) out += ",";
        out += std::to_string(v);
    }
    return out;
}

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char ch : s)
        if (ch != ' ') out += ch;
    return out;
}

// One comment line per trace node with fixed field names, formula quoted
// because it may contain spaces.
std::string trace_lines(const TraceReport& trace) {
    std::ostringstream out;
    for (const TraceNode& n : trace.nodes) {
        out << "# trace depth=" << n.depth << " scope=" << strip_spaces(n.scope_label)
            << " branch=" << n.branch;
        out << " t=";
        if (n.t >= 0)
            out << n.t << (n.t_exact ? "" : "~");
        else
            out << "-";
        out << " alpha=";
        if (n.alpha >= 0)
            out << n.alpha << (n.alpha_exact ? "" : "~");
        else
            out << "-";
        out << " chain=" << n.chain_length << " span=" << n.span;
        out << " palettes=";
        if (n.palettes.empty()) out << "-";
        for (size_t i = 0; i < n.palettes.size(); ++i) {
            if (i) out << ";";
            out << n.palettes[i].name << "@" << n.palettes[i].base << "+" << n.palettes[i].size;
        }
        out << " flags=";
        if (n.flags.empty()) out << "-";
        for (size_t i = 0; i < n.flags.size(); ++i) {
            if (i) out << ";";
            out << n.flags[i];
        }
        if (!n.formula.empty()) out << " formula=\"" << n.formula << "\"";
        out << "\n";
    }
    out << "# degraded " << (trace.degraded ? 1 : 0) << "\n";
    return out.str();
}

GenSpec::Model parse_model(const std::string& name) {
    if (name == "random-tournament") return GenSpec::Model::random_tournament;
    if (name == "random-oriented") return GenSpec::Model::random_oriented;
    if (name == "qr") return GenSpec::Model::qr;
    if (name == "transitive") return GenSpec::Model::transitive;
    if (name == "cycle") return GenSpec::Model::cycle;
    if (name == "blowup") return GenSpec::Model::blowup;
    throw contract_error("unknown model " + name);
}

struct GenArgs {
    std::string model;
    std::string base = "cycle";
    int n = 0;
    int q = 7;
    double p = 0.5;
    std::uint64_t seed = 1;
    std::vector<int> parts;
    std::string out_path;
};

int run_gen(const GenArgs& a) {
    GenSpec spec;
    spec.model = parse_model(a.model);
    spec.n = a.n;
    spec.q = a.q;
    spec.p = a.p;
    spec.seed = a.seed;
    if (spec.model == GenSpec::Model::blowup) {
        spec.parts = a.parts;
        if (spec.parts.empty()) throw contract_error("blowup needs --parts a,b,c");
        auto base = std::make_shared<GenSpec>();
        base->model = parse_model(a.base);
        base->n = a.n;
        base->q = a.q;
        base->p = a.p;
        base->seed = a.seed;
        spec.base = base;
    }
    write_text(a.out_path, serialize_digraph(generate(spec)));
    return kOk;
}

int run_analyze(const std::string& path, int chi_limit) {
    OrientedGraph d = load_digraph(path);
    VertexSet all = VertexSet::all(d.n());
    bool degraded = false;
    std::ostringstream out;
    out << "n " << d.n() << "\n";
    out << "arcs " << d.arc_count() << "\n";
    out << "tournament " << (d.is_tournament() ? "yes" : "no") << "\n";

    IndependenceResult alpha = independence_number(d);
    out << "alpha " << alpha.value << (alpha.exact ? " exact" : " greedy") << "\n";
    degraded |= !alpha.exact;

    SetSearchResult dom = dominating_set(d, all);
    out << "dominating " << dom.set.count() << (dom.exact ? " exact" : " greedy") << "\n";
    degraded |= !dom.exact;
    SetSearchResult abs = absorbing_set(d, all);
    out << "absorbing " << abs.set.count() << (abs.exact ? " exact" : " greedy") << "\n";
    degraded |= !abs.exact;

    std::vector<int> cycle = shortest_cycle(d);
    if (cycle.empty())
        out << "girth none\n";
    else
        out << "girth " << cycle.size() << " cycle " << fmt_cycle(cycle) << "\n";

    ArcBoundedness ab = arc_boundedness(d, all, chi_limit);
    out << "t " << ab.t << (ab.exact ? " exact" : " greedy");
    if (ab.witness.from >= 0) out << " witness " << ab.witness.from << "->" << ab.witness.to;
    out << "\n";
    degraded |= !ab.exact;

    if (d.n() <= chi_limit) {
        out << "chi " << dichromatic_exact(d, all, chi_limit).number << " exact\n";
    } else {
        out << "chi " << dichromatic_greedy(d, all).color_count << " greedy\n";
        degraded = true;
    }

    std::cout << out.str();
    return degraded ? kDegraded : kOk;
}

struct ColorArgs {
    std::string path;
    std::string method = "digraph";
    int t = 2;
    int c = 1;
    int ell = 8;
    int K = 6;
    std::string out_path;
};

int run_color(const ColorArgs& a) {
    OrientedGraph d = load_digraph(a.path);
    Budgets budgets;
    budgets.ell_budget = a.ell;
    budgets.K_budget = a.K;
    std::ostringstream out;
    out << "# method " << a.method << "\n";
    Coloring coloring(d.n());
    TraceReport trace;
    if (a.method == "exact") {
        DichromaticResult r = dichromatic_exact(d, VertexSet::all(d.n()), std::max(d.n(), 1));
        coloring = r.witness;
        TraceNode node;
        node.scope_label = detail::scope_label(VertexSet::all(d.n()));
        node.branch = "exact";
        node.span = r.number;
        trace.nodes.push_back(node);
    } else if (a.method == "greedy") {
        coloring = dichromatic_greedy(d, VertexSet::all(d.n()));
        TraceNode node;
        node.scope_label = detail::scope_label(VertexSet::all(d.n()));
        node.branch = "greedy";
        node.span = coloring.span();
        trace.nodes.push_back(node);
    } else if (a.method == "tournament") {
        PipelineResult r = color_tournament_arc_local(d, budgets);
        coloring = r.coloring;
        trace = r.trace;
    } else if (a.method == "digraph") {
        PipelineResult r = color_digraph_arc_local(d, budgets);
        coloring = r.coloring;
        trace = r.trace;
    } else if (a.method == "refine") {
        RefineOutcome r = light_color_then_refine(d, a.t, a.c, budgets);
        trace = r.trace;
        if (r.split) {
            out << "# split a=" << fmt_set(r.split->a) << " b=" << fmt_set(r.split->b) << "\n";
            out << trace_lines(trace);
            write_text(a.out_path, out.str());
            return trace.degraded ? kDegraded : kOk;
        }
        coloring = r.coloring;
    } else {
        throw contract_error("unknown method " + a.method);
    }
    serialize_coloring(coloring, out);
    out << trace_lines(trace);
    write_text(a.out_path, out.str());
    return trace.degraded ? kDegraded : kOk;
}

int run_verify(const std::string& graph_path, const std::string& color_path) {
    OrientedGraph d = load_digraph(graph_path);
    Coloring c = load_coloring(color_path);
    if (c.n() != d.n())
        throw contract_error("coloring universe " + std::to_string(c.n()) +
                             " does not match digraph order " + std::to_string(d.n()));
    if (!verify_coloring(d, c)) {
        std::cout << "invalid some class induces a directed cycle\n";
        return kError;
    }
    std::cout << "valid span " << c.span() << "\n";
    return kOk;
}

int run_cluster(const std::string& path, int k, int ell, long long nodes) {
    OrientedGraph d = load_digraph(path);
    ClusterSearchResult r = find_cluster(d, VertexSet::all(d.n()), k, ell, nodes);
    std::ostringstream out;
    out << "nodes " << r.nodes << "\n";
    if (r.status == SearchStatus::found) {
        out << "status found\n";
        out << "members " << fmt_set(r.cluster->members) << "\n";
        out << "k " << r.cluster->k << "\n";
        out << "ell " << r.cluster->ell << "\n";
        std::cout << out.str();
        return kOk;
    }
    out << "status " << (r.status == SearchStatus::proven_absent ? "absent-proven"
                                                                 : "absent-budget")
        << "\n";
    std::cout << out.str();
    return r.status == SearchStatus::proven_absent ? kOk : kDegraded;
}

int run_chain(const std::string& path, int d_param, int ell, long long nodes) {
    OrientedGraph d = load_digraph(path);
    Completion comp = complete_to_tournament(d);
    JewelChain chain = grow_jewel_chain(comp.tournament, d, VertexSet::all(d.n()), d_param + 1,
                                        ell, nodes);
    std::ostringstream out;
    out << "blocks " << chain.p() << "\n";
    for (int i = 0; i < chain.p(); ++i) {
        const Cluster& b = chain.blocks[static_cast<size_t>(i)];
        out << "block " << i << " members=" << fmt_set(b.members) << " k=" << b.k
            << " ell=" << b.ell << "\n";
    }
    out << "front-exhaustive " << (chain.front_exhaustive ? "yes" : "no") << "\n";
    out << "back-exhaustive " << (chain.back_exhaustive ? "yes" : "no") << "\n";
    std::cout << out.str();
    return (chain.front_exhaustive && chain.back_exhaustive) ? kOk : kDegraded;
}

int run_complete(const std::string& path) {
    OrientedGraph d = load_digraph(path);
    Completion c = complete_to_tournament(d);
    std::ostringstream out;
    serialize_digraph(c.tournament, out);
    out << "# fillers " << c.filler_count << "\n";
    std::cout << out.str();
    return kOk;
}

int run_split(const std::string& path, const std::vector<int>& cluster) {
    OrientedGraph d = load_digraph(path);
    VertexSet base(d.n());
    for (int v : cluster) {
        if (v < 0 || v >= d.n())
            throw contract_error("cluster vertex " + std::to_string(v) + " outside universe");
        base.add(v);
    }
    auto classes = split_by_trace(d, base);
    std::ostringstream out;
    out << "classes " << classes.size() << "\n";
    for (size_t i = 0; i < classes.size(); ++i)
        out << "class " << i << " members=" << fmt_set(classes[i].members)
            << " out=" << fmt_set(classes[i].out_trace)
            << " in=" << fmt_set(classes[i].in_trace) << "\n";
    std::cout << out.str();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arc neighborhood toolkit for dichromatic coloring"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate an instance");
    gen->add_option("--model", gen_args.model, "random-tournament|random-oriented|qr|transitive|cycle|blowup")
        ->required();
    gen->add_option("--n", gen_args.n, "vertex count");
    gen->add_option("--q", gen_args.q, "prime q = 3 (mod 4) for the qr model");
    gen->add_option("--p", gen_args.p, "arc probability for random-oriented");
    gen->add_option("--seed", gen_args.seed, "stream seed");
    gen->add_option("--parts", gen_args.parts, "blowup part sizes")->delimiter(',');
    gen->add_option("--base", gen_args.base, "blowup base model");
    gen->add_option("-o,--out", gen_args.out_path, "output file (default stdout)");

    std::string analyze_path;
    int analyze_chi_limit = 20;
    auto* analyze = app.add_subcommand("analyze", "Measure instance parameters");
    analyze->add_option("file", analyze_path, "digraph file, - for stdin")->required();
    analyze->add_option("--chi-limit", analyze_chi_limit, "exact dichromatic budget");

    ColorArgs color_args;
    auto* color = app.add_subcommand("color", "Color an instance");
    color->add_option("file", color_args.path, "digraph file, - for stdin")->required();
    color->add_option("--method", color_args.method, "exact|greedy|tournament|digraph|refine");
    color->add_option("--t", color_args.t, "refine: heaviness parameter");
    color->add_option("--c", color_args.c, "refine: pair target");
    color->add_option("--ell", color_args.ell, "cluster size budget");
    color->add_option("--K", color_args.K, "jewel chain budget");
    color->add_option("-o,--out", color_args.out_path, "output file (default stdout)");

    std::string verify_graph, verify_colors;
    auto* verify = app.add_subcommand("verify", "Check a coloring file");
    verify->add_option("file", verify_graph, "digraph file")->required();
    verify->add_option("colorfile", verify_colors, "coloring file")->required();

    std::string cluster_path;
    int cluster_k = 2, cluster_ell = 8;
    long long cluster_nodes = 200000;
    auto* cluster = app.add_subcommand("cluster", "Search for a (k,ell)-cluster");
    cluster->add_option("file", cluster_path, "digraph file")->required();
    cluster->add_option("--k", cluster_k, "dichromatic target")->required();
    cluster->add_option("--ell", cluster_ell, "maximum size");
    cluster->add_option("--nodes", cluster_nodes, "search node budget");

    std::string chain_path;
    int chain_d = 1, chain_ell = 8;
    long long chain_nodes = 200000;
    auto* chain = app.add_subcommand("chain", "Grow a jewel chain in the completion");
    chain->add_option("file", chain_path, "digraph file")->required();
    chain->add_option("--d", chain_d, "per-arc boundedness; jewels use k = d+1")->required();
    chain->add_option("--ell", chain_ell, "jewel size budget");
    chain->add_option("--nodes", chain_nodes, "search node budget");

    std::string complete_path;
    auto* complete = app.add_subcommand("complete", "Extend to a tournament");
    complete->add_option("file", complete_path, "digraph file")->required();

    std::string split_path;
    std::vector<int> split_cluster;
    auto* split = app.add_subcommand("split", "Partition by traces on a vertex set");
    split->add_option("file", split_path, "digraph file")->required();
    split->add_option("--cluster", split_cluster, "base vertices")->required()->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (analyze->parsed()) return run_analyze(analyze_path, analyze_chi_limit);
        if (color->parsed()) return run_color(color_args);
        if (verify->parsed()) return run_verify(verify_graph, verify_colors);
        if (cluster->parsed()) return run_cluster(cluster_path, cluster_k, cluster_ell, cluster_nodes);
        if (chain->parsed()) return run_chain(chain_path, chain_d, chain_ell, chain_nodes);
        if (complete->parsed()) return run_complete(complete_path);
        if (split->parsed()) return run_split(split_path, split_cluster);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kError;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
