#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "dynwalk/dsl/parser.hpp"
#include "dynwalk/gen.hpp"
#include "dynwalk/report.hpp"
#include "dynwalk/rng.hpp"
#include "dynwalk/runtime.hpp"
#include "dynwalk/stats_math.hpp"

namespace dw = dynwalk;

namespace {

struct CommonOpts {
    std::string graph_path;
    std::string gen_spec;
    bool undirected = false;
    std::string weights_spec;
    std::string labels_range; // "low,high"
    std::string save_graph;
    std::string model = "node2vec";
    std::string dsl_path;
    double a = 2.0;
    double b = 0.5;
    double gamma = 0.2;
    std::string schema = "0,1,2,3,4";
    std::string mode = "adaptive";
    std::uint32_t workers = 1;
    std::uint64_t seed = 0;
    std::uint32_t steps = 80;
    std::string queries = "all";
    std::string out_path;
    std::string stats_path;
    double edge_cost_ratio = 0.0; // 0: profile (or env override)
    std::string alpha_sweep;
    bool collect_cv = false;
    bool strict = false;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--graph", o.graph_path, "edge-list or binary graph file");
    cmd->add_option("--gen", o.gen_spec, "synthesize topology, e.g. ba:n=1000,deg=8");
    cmd->add_flag("--undirected", o.undirected, "mirror every edge on load/generation");
    cmd->add_option("--weights", o.weights_spec,
                    "rewrite edge properties: uniform:low=1,high=5 | pareto:alpha=1.5 | degree");
    cmd->add_option("--labels", o.labels_range, "synthesize labels uniform in low,high (e.g. 0,4)");
    cmd->add_option("--save-graph", o.save_graph, "write the prepared graph as a binary cache");
    cmd->add_option("--model", o.model,
                    "builtin workload: static[-unw] node2vec[-unw] metapath[-unw] pr2[-unw]");
    cmd->add_option("--dsl", o.dsl_path, "weight function source file (overrides --model)");
    cmd->add_option("--a", o.a, "node2vec return parameter");
    cmd->add_option("--b", o.b, "node2vec in-out parameter");
    cmd->add_option("--gamma", o.gamma, "second-order pagerank mixing parameter");
    cmd->add_option("--schema", o.schema, "metapath label schema, comma separated");
    cmd->add_option("--mode", o.mode,
                    "adaptive | force-ervs | force-erjs | force-its | force-als | ervs-nojump");
    cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1u, 1024u));
    cmd->add_option("--seed", o.seed, "seed for all randomness");
    cmd->add_option("--steps", o.steps, "walk length in steps");
    cmd->add_option("--queries", o.queries, "all | random:K | comma-separated start vertices");
    cmd->add_option("--out", o.out_path, "paths output file");
    cmd->add_option("--stats", o.stats_path, "stats report output file");
    cmd->add_option("--edge-cost-ratio", o.edge_cost_ratio,
                    "override the profiled random/sequential cost ratio");
    cmd->add_option("--alpha-sweep", o.alpha_sweep,
                    "comma-separated Pareto shapes: rerun the batch per shape and report "
                    "sampler selection ratios");
    cmd->add_flag("--collect-cv", o.collect_cv, "record per-node weight-sum CV inputs");
    cmd->add_flag("--strict", o.strict, "nonzero exit when any query fails");
}

std::vector<dw::Label> parse_schema(const std::string& text) {
    std::vector<dw::Label> schema;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        schema.push_back(static_cast<dw::Label>(std::stoul(tok)));
    if (schema.empty()) throw dw::Error("schema must not be empty");
    return schema;
}

dw::Graph build_graph(const CommonOpts& o) {
    dw::Graph g;
    if (!o.graph_path.empty() && !o.gen_spec.empty())
        throw dw::Error("give either --graph or --gen, not both");
    if (o.graph_path.empty() && o.gen_spec.empty())
        throw dw::Error("a graph source is required (--graph or --gen)");
    if (!o.graph_path.empty()) {
        g = dw::is_binary_graph_file(o.graph_path)
                ? dw::load_binary(o.graph_path)
                : dw::load_edge_list(o.graph_path, /*directed=*/!o.undirected);
    } else {
        g = dw::generate_topology(
            dw::parse_topology_spec(o.gen_spec, dw::derive_seed(o.seed, 1), o.undirected));
    }
    if (!o.weights_spec.empty())
        g = dw::synthesize_weights(g, dw::parse_weight_spec(o.weights_spec,
                                                            dw::derive_seed(o.seed, 2)));
    if (!o.labels_range.empty()) {
        dw::WeightGenSpec spec;
        spec.kind = dw::WeightGenSpec::Kind::UniformIntLabel;
        const std::size_t comma = o.labels_range.find(',');
        if (comma == std::string::npos)
            throw dw::Error("--labels expects low,high");
        spec.low = std::stod(o.labels_range.substr(0, comma));
        spec.high = std::stod(o.labels_range.substr(comma + 1));
        spec.seed = dw::derive_seed(o.seed, 3);
        g = dw::synthesize_weights(g, spec);
    }
    if (!o.save_graph.empty()) dw::save_binary(g, o.save_graph);
    return g;
}

dw::AnyModel build_model(const CommonOpts& o, const dw::Graph& g) {
    if (!o.dsl_path.empty()) return dw::DslWalk(dw::dsl::parse_file(o.dsl_path), g);
    dw::ModelParams params;
    params.a = o.a;
    params.b = o.b;
    params.gamma = o.gamma;
    params.schema = parse_schema(o.schema);
    return dw::make_builtin_model(o.model, params);
}

std::vector<dw::VertexId> build_queries(const CommonOpts& o, const dw::Graph& g) {
    if (o.queries == "all") return dw::all_vertices(g);
    if (o.queries.rfind("random:", 0) == 0) {
        const std::uint64_t k = std::stoull(o.queries.substr(7));
        if (g.num_vertices() == 0) throw dw::Error("cannot draw queries from an empty graph");
        dw::CountingRng rng(dw::derive_seed(o.seed, 4));
        std::vector<dw::VertexId> q(k);
        for (auto& v : q) v = static_cast<dw::VertexId>(rng.bounded(g.num_vertices()));
        return q;
    }
    std::vector<dw::VertexId> q;
    std::istringstream ss(o.queries);
    std::string tok;
    while (std::getline(ss, tok, ','))
        q.push_back(static_cast<dw::VertexId>(std::stoull(tok)));
    if (q.empty()) throw dw::Error("no start vertices given");
    return q;
}

dw::CostModelParams resolve_ratio(const CommonOpts& o, const dw::Graph& g,
                                  const dw::AnyModel& model, bool needed) {
    dw::CostModelParams params;
    if (o.edge_cost_ratio > 0.0) {
        params.edge_cost_ratio = o.edge_cost_ratio;
        return params;
    }
    if (const char* env = std::getenv("DYNWALK_EDGE_COST_RATIO")) {
        params.edge_cost_ratio = std::stod(env);
        if (!(params.edge_cost_ratio > 0.0))
            throw dw::Error("DYNWALK_EDGE_COST_RATIO must be positive");
        return params;
    }
    if (!needed) return params;
    dw::ProfileConfig cfg;
    cfg.seed = dw::derive_seed(o.seed, 5);
    return dw::profile_edge_cost_ratio(g, model, cfg);
}

dw::ReportContext make_context(const CommonOpts& o, const dw::Graph& g,
                               const dw::AnyModel& model, std::uint64_t queries) {
    dw::ReportContext ctx;
    ctx.graph_source = !o.graph_path.empty() ? o.graph_path : o.gen_spec;
    ctx.graph_vertices = g.num_vertices();
    ctx.graph_edges = g.num_edges();
    ctx.model = dw::model_name(model);
    ctx.mode = o.mode;
    ctx.workers = o.workers;
    ctx.seed = o.seed;
    ctx.walk_length = o.steps;
    ctx.queries = queries;
    return ctx;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

int cmd_walk(const CommonOpts& o) {
    const dw::Graph g = build_graph(o);
    const dw::AnyModel model = build_model(o, g);
    const std::vector<dw::VertexId> queries = build_queries(o, g);

    dw::RunOptions opts;
    opts.mode = dw::parse_sampler_mode(o.mode);
    opts.walk_length = o.steps;
    opts.workers = o.workers;
    opts.seed = o.seed;
    opts.collect_cv = o.collect_cv;

    const bool needs_ratio = opts.mode == dw::SamplerMode::Adaptive || !o.alpha_sweep.empty();
    const dw::CostModelParams params = resolve_ratio(o, g, model, needs_ratio);

    if (!o.alpha_sweep.empty()) {
        const std::vector<double> alphas = parse_doubles(o.alpha_sweep);
        if (alphas.empty()) throw dw::Error("--alpha-sweep needs at least one shape value");
        const auto rows = dw::selection_ratio_sweep(g, model, params, alphas, queries, opts);
        const std::string text = dw::render_sweep(rows);
        std::cout << text;
        if (!o.stats_path.empty()) dw::write_text_file(o.stats_path, text);
        return 0;
    }

    const dw::RunResult rr = dw::run_queries(g, model, params, queries, opts);
    if (!o.out_path.empty()) dw::write_paths(o.out_path, rr.paths);
    const std::string report =
        dw::render_stats(make_context(o, g, model, queries.size()), params, rr.stats);
    if (!o.stats_path.empty()) {
        dw::write_text_file(o.stats_path, report);
        std::cout << "queries=" << queries.size() << " steps=" << rr.stats.steps
                  << " wall_ms=" << rr.stats.wall_ms << "\n";
    } else {
        std::cout << report;
    }
    if (rr.stats.query_errors > 0) {
        std::cerr << rr.stats.query_errors << " queries failed (start vertex out of range)\n";
        if (o.strict) return 3;
    }
    return 0;
}

int cmd_bench(const CommonOpts& o, const std::string& modes_csv) {
    const dw::Graph g = build_graph(o);
    const dw::AnyModel model = build_model(o, g);
    const std::vector<dw::VertexId> queries = build_queries(o, g);

    std::vector<std::string> modes;
    {
        std::istringstream ss(modes_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) modes.push_back(tok);
    }
    if (modes.empty()) throw dw::Error("--modes needs at least one sampler mode");

    bool any_adaptive = false;
    for (const auto& m : modes)
        any_adaptive = any_adaptive || dw::parse_sampler_mode(m) == dw::SamplerMode::Adaptive;
    const dw::CostModelParams params = resolve_ratio(o, g, model, any_adaptive);

    std::ostringstream machine;
    std::cout << std::left << std::setw(14) << "mode" << std::right << std::setw(12) << "wall_ms"
              << std::setw(14) << "steps" << std::setw(14) << "trials" << std::setw(16)
              << "weight_reads" << std::setw(14) << "rng_draws" << std::setw(11) << "fallbacks"
              << "\n";
    for (const std::string& mode : modes) {
        dw::RunOptions opts;
        opts.mode = dw::parse_sampler_mode(mode);
        opts.walk_length = o.steps;
        opts.workers = o.workers;
        opts.seed = o.seed;
        const dw::RunResult rr = dw::run_queries(g, model, params, queries, opts);
        std::cout << std::left << std::setw(14) << mode << std::right << std::setw(12)
                  << std::fixed << std::setprecision(1) << rr.stats.wall_ms << std::setw(14)
                  << rr.stats.steps << std::setw(14) << rr.stats.trials << std::setw(16)
                  << rr.stats.weight_reads << std::setw(14) << rr.stats.rng_draws
                  << std::setw(11) << rr.stats.erjs_fallbacks << "\n";
        machine << "bench mode=" << mode << " wall_ms=" << rr.stats.wall_ms
                << " steps=" << rr.stats.steps << " trials=" << rr.stats.trials
                << " weight_reads=" << rr.stats.weight_reads
                << " rng_draws=" << rr.stats.rng_draws
                << " fallbacks=" << rr.stats.erjs_fallbacks << "\n";
    }
    if (!o.stats_path.empty()) dw::write_text_file(o.stats_path, machine.str());
    return 0;
}

// ---- verify: statistical self-test on built-in fixtures ----

dw::Graph star_fixture() {
    std::vector<dw::EdgeRecord> edges = {
        {0, 1, 3.0f, 0}, {0, 2, 2.0f, 0}, {0, 3, 4.0f, 0}, {0, 4, 1.0f, 0}};
    return dw::Graph::build(std::move(edges), false, false);
}

struct VerifyState {
    bool all_ok = true;

    void report(const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
        all_ok = all_ok && ok;
    }
};

int cmd_verify(const CommonOpts& o, std::uint64_t samples, bool inject_bad_bound) {
    if (samples == 0) throw dw::Error("--samples must be >= 1");

    VerifyState vs;
    const dw::Graph star = star_fixture();
    dw::WalkerState st;
    st.reset(0, 0);

    const dw::StaticWalk sm{true};
    const auto probs_opt = dw::oracle_enumerate(star, st, sm);
    const std::vector<double>& probs = *probs_opt;

    // chi-square distribution suite over all five kernels
    dw::SamplerScratch scratch;
    const double bound_exact = star.node_prop_max(0);
    for (const std::string kernel : {"ervs", "ervs-nojump", "erjs", "its", "als"}) {
        dw::CountingRng rng(dw::derive_seed(o.seed, 100));
        std::vector<std::uint64_t> counts(4, 0);
        for (std::uint64_t i = 0; i < samples; ++i) {
            dw::SampleOutcome out;
            if (kernel == "ervs") out = dw::sample_ervs(star, st, sm, rng);
            else if (kernel == "ervs-nojump") out = dw::sample_ervs_nojump(star, st, sm, rng);
            else if (kernel == "erjs")
                out = dw::sample_erjs(star, st, sm, rng, dw::BoundEstimate{bound_exact});
            else if (kernel == "its") out = dw::sample_its(star, st, sm, rng, scratch);
            else out = dw::sample_als(star, st, sm, rng, scratch);
            ++counts[out.next - 1];
        }
        const dw::GofResult gof = dw::chi_square_gof(counts, probs);
        std::ostringstream detail;
        detail << "chi-square p=" << gof.p_value;
        vs.report("distribution/" + kernel, gof.p_value > 0.001, detail.str());
    }

    // c-independence: exact bound vs 10x bound
    {
        std::vector<std::uint64_t> exact_counts(4, 0), loose_counts(4, 0);
        double exact_trials = 0.0, loose_trials = 0.0;
        dw::CountingRng rng1(dw::derive_seed(o.seed, 101));
        dw::CountingRng rng2(dw::derive_seed(o.seed, 102));
        for (std::uint64_t i = 0; i < samples; ++i) {
            const auto a = dw::sample_erjs(star, st, sm, rng1, dw::BoundEstimate{bound_exact});
            const auto b =
                dw::sample_erjs(star, st, sm, rng2, dw::BoundEstimate{10.0 * bound_exact});
            ++exact_counts[a.next - 1];
            ++loose_counts[b.next - 1];
            exact_trials += static_cast<double>(a.trials);
            loose_trials += static_cast<double>(b.trials);
        }
        const dw::GofResult two = dw::chi_square_two_sample(exact_counts, loose_counts);
        std::ostringstream detail;
        detail << "two-sample p=" << two.p_value << ", mean trials "
               << exact_trials / static_cast<double>(samples) << " vs "
               << loose_trials / static_cast<double>(samples);
        const double expect_exact = 4.0 * bound_exact / 10.0;
        const bool trials_ok =
            std::abs(exact_trials / static_cast<double>(samples) - expect_exact) <
                0.1 * expect_exact &&
            std::abs(loose_trials / static_cast<double>(samples) - 10.0 * expect_exact) <
                0.1 * 10.0 * expect_exact;
        vs.report("c-independence", two.p_value > 0.001 && trials_ok, detail.str());
    }

    // bound soundness scan over the three dynamic workloads
    {
        dw::TopologySpec topo;
        topo.kind = dw::TopologySpec::Kind::PreferentialAttachment;
        topo.n = 300;
        topo.deg = 6;
        topo.seed = dw::derive_seed(o.seed, 103);
        topo.mirror = true;
        dw::Graph g = dw::generate_topology(topo);
        dw::WeightGenSpec wspec;
        wspec.kind = dw::WeightGenSpec::Kind::Pareto;
        wspec.alpha = 1.0;
        wspec.seed = dw::derive_seed(o.seed, 104);
        g = dw::synthesize_weights(std::move(g), wspec);
        dw::WeightGenSpec lspec;
        lspec.kind = dw::WeightGenSpec::Kind::UniformIntLabel;
        lspec.low = 0;
        lspec.high = 4;
        lspec.seed = dw::derive_seed(o.seed, 105);
        g = dw::synthesize_weights(std::move(g), lspec);

        dw::RunOptions opts;
        opts.mode = dw::SamplerMode::Adaptive;
        opts.walk_length = 80;
        opts.workers = o.workers;
        opts.seed = o.seed;
        opts.check_bounds = true;
        opts.bound_scale = inject_bad_bound ? 0.2 : 1.0;
        dw::CostModelParams params;
        params.edge_cost_ratio = 4.0;

        const auto queries = dw::all_vertices(g);
        std::uint64_t checks = 0, violations = 0;
        for (const char* name : {"node2vec", "metapath", "pr2"}) {
            const dw::AnyModel m = dw::make_builtin_model(name, dw::ModelParams{});
            const auto rr = dw::run_queries(g, m, params, queries, opts);
            checks += rr.stats.bound_checks;
            violations += rr.stats.bound_violations;
        }
        std::ostringstream detail;
        detail << violations << " violations in " << checks << " scans"
               << (inject_bad_bound ? " (bad bound injected)" : "");
        vs.report("bound-soundness", violations == 0 && checks > 0, detail.str());
    }

    return vs.all_ok ? 0 : 1;
}

int cmd_analyze(const std::string& dsl_path, const std::string& out_path) {
    const dw::dsl::Program prog = dw::dsl::parse_file(dsl_path);
    const dw::dsl::AnalysisResult res = dw::dsl::analyze(prog);
    const std::string report = dw::dsl::render_report(prog, res);
    if (!out_path.empty()) {
        dw::write_text_file(out_path, report);
    } else {
        std::cout << report;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynwalk: dynamic random walk engine with adaptive kernel selection"};
    app.require_subcommand(1);

    CommonOpts walk_opts;
    CLI::App* walk = app.add_subcommand("walk", "run walk queries and emit paths + stats");
    add_common_flags(walk, walk_opts);

    CommonOpts bench_opts;
    std::string bench_modes = "adaptive,force-ervs,force-erjs";
    CLI::App* bench = app.add_subcommand("bench", "time several sampler modes on one workload");
    add_common_flags(bench, bench_opts);
    bench->add_option("--modes", bench_modes, "comma-separated sampler modes to compare");

    CommonOpts verify_opts;
    std::uint64_t verify_samples = 200000;
    bool inject_bad_bound = false;
    CLI::App* verify = app.add_subcommand("verify", "statistical self-test on built-in fixtures");
    add_common_flags(verify, verify_opts);
    verify->add_option("--samples", verify_samples, "samples per distribution test");
    verify->add_flag("--inject-bad-bound", inject_bad_bound,
                     "debug hook: scale bounds below the true max; the soundness scan must fail");

    std::string analyze_dsl, analyze_out;
    CLI::App* analyze = app.add_subcommand("analyze", "print the weight-function analysis table");
    analyze->add_option("--dsl", analyze_dsl, "weight function source file")->required();
    analyze->add_option("--out", analyze_out, "write the report to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(walk)) return cmd_walk(walk_opts);
        if (app.got_subcommand(bench)) return cmd_bench(bench_opts, bench_modes);
        if (app.got_subcommand(verify))
            return cmd_verify(verify_opts, verify_samples, inject_bad_bound);
        if (app.got_subcommand(analyze)) return cmd_analyze(analyze_dsl, analyze_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
