#include "dynwalk/runtime.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include "dynwalk/rng.hpp"

namespace dynwalk {

SamplerMode parse_sampler_mode(const std::string& name) {
    if (name == "adaptive") return SamplerMode::Adaptive;
    if (name == "force-ervs") return SamplerMode::ForceErvs;
    if (name == "force-erjs") return SamplerMode::ForceErjs;
    if (name == "force-its") return SamplerMode::ForceIts;
    if (name == "force-als") return SamplerMode::ForceAls;
    if (name == "ervs-nojump") return SamplerMode::ErvsNoJump;
    throw Error("unknown sampler mode '" + name +
                "' (expected adaptive, force-ervs, force-erjs, force-its, force-als, ervs-nojump)");
}

const char* sampler_mode_name(SamplerMode mode) {
    switch (mode) {
    case SamplerMode::Adaptive: return "adaptive";
    case SamplerMode::ForceErvs: return "force-ervs";
    case SamplerMode::ForceErjs: return "force-erjs";
    case SamplerMode::ForceIts: return "force-its";
    case SamplerMode::ForceAls: return "force-als";
    case SamplerMode::ErvsNoJump: return "ervs-nojump";
    }
    return "?";
}

namespace {

struct LocalStats {
    RunStats s;

    void bucket(std::uint32_t degree, SamplerChoice choice) {
        std::uint32_t b = 0;
        while ((1u << (b + 1)) <= degree && b < 31) ++b;
        ++s.selection_by_degree[b][choice == SamplerChoice::Erjs ? 1 : 0];
    }
};

template <typename Model>
double scan_weight_sum(const Graph& g, const WalkerState& st, const Model& model) {
    const std::uint32_t d = g.degree(st.cur);
    const EdgeIndex e0 = g.out_edge_begin(st.cur);
    double sum = 0.0;
    for (std::uint32_t i = 0; i < d; ++i)
        sum += model.weight(g, st, e0 + i);
    return sum;
}

template <typename Model>
void walk_query(const Graph& g, const Model& model, const CostModelParams& params,
                const RunOptions& opts, VertexId start, std::uint64_t qid,
                std::vector<VertexId>& path_out, LocalStats& ls, SamplerScratch& scratch) {
    WalkerState st;
    st.reset(qid, start);
    CountingRng rng(derive_seed(opts.seed, qid));
    const std::uint32_t target = std::min(opts.walk_length, model.max_steps());
    const bool boundable = model.estimation_flag() != EstimationFlag::None;

    while (st.step < target) {
        const std::uint32_t d = g.degree(st.cur);
        if (d == 0) break;

        if (opts.collect_cv)
            ls.s.cv_by_node[st.cur].add(scan_weight_sum(g, st, model));

        SampleOutcome out;
        switch (opts.mode) {
        case SamplerMode::Adaptive: {
            const SamplerDecision dec = decide_sampler(g, st, model, params);
            if (opts.check_bounds && boundable) {
                ++ls.s.bound_checks;
                if (dec.est_max * opts.bound_scale < scan_max_weight(g, st, model))
                    ++ls.s.bound_violations;
            }
            ls.bucket(d, dec.choice);
            if (dec.choice == SamplerChoice::Erjs) {
                ++ls.s.select_erjs;
                const BoundEstimate bound{dec.est_max * opts.bound_scale,
                                          model.estimation_flag() == EstimationFlag::PerKernel
                                              ? BoundEstimate::Source::PerKernelConst
                                              : BoundEstimate::Source::PerStepComposed};
                out = sample_erjs(g, st, model, rng, bound, opts.erjs_cap_per_degree);
            } else {
                ++ls.s.select_ervs;
                out = sample_ervs(g, st, model, rng);
            }
            break;
        }
        case SamplerMode::ForceErvs:
            ++ls.s.select_ervs;
            ls.bucket(d, SamplerChoice::Ervs);
            out = sample_ervs(g, st, model, rng);
            break;
        case SamplerMode::ErvsNoJump:
            ++ls.s.select_ervs;
            ls.bucket(d, SamplerChoice::Ervs);
            out = sample_ervs_nojump(g, st, model, rng);
            break;
        case SamplerMode::ForceErjs: {
            if (!boundable) { // NONE degrades to the reservoir kernel
                ++ls.s.select_ervs;
                ls.bucket(d, SamplerChoice::Ervs);
                out = sample_ervs(g, st, model, rng);
                break;
            }
            const double est = model.estimate_bound(g, st);
            if (opts.check_bounds) {
                ++ls.s.bound_checks;
                if (est * opts.bound_scale < scan_max_weight(g, st, model))
                    ++ls.s.bound_violations;
            }
            ++ls.s.select_erjs;
            ls.bucket(d, SamplerChoice::Erjs);
            const BoundEstimate bound{est * opts.bound_scale,
                                      model.estimation_flag() == EstimationFlag::PerKernel
                                          ? BoundEstimate::Source::PerKernelConst
                                          : BoundEstimate::Source::PerStepComposed};
            out = sample_erjs(g, st, model, rng, bound, opts.erjs_cap_per_degree);
            break;
        }
        case SamplerMode::ForceIts:
            ++ls.s.select_its;
            out = sample_its(g, st, model, rng, scratch);
            break;
        case SamplerMode::ForceAls:
            ++ls.s.select_als;
            out = sample_als(g, st, model, rng, scratch);
            break;
        }

        ++ls.s.steps;
        ls.s.trials += out.trials;
        ls.s.weight_reads += out.weight_reads;
        ls.s.rng_draws += out.rng_draws;
        if (out.fell_back) ++ls.s.erjs_fallbacks;
        if (out.dead_end()) {
            ++ls.s.dead_ends;
            break;
        }
        st.advance(g, out.next);
    }
    path_out = std::move(st.path);
}

void merge_stats(RunStats& into, const RunStats& from) {
    into.queries += from.queries;
    into.query_errors += from.query_errors;
    into.dead_ends += from.dead_ends;
    into.steps += from.steps;
    into.select_ervs += from.select_ervs;
    into.select_erjs += from.select_erjs;
    into.select_its += from.select_its;
    into.select_als += from.select_als;
    into.trials += from.trials;
    into.weight_reads += from.weight_reads;
    into.rng_draws += from.rng_draws;
    into.erjs_fallbacks += from.erjs_fallbacks;
    into.bound_checks += from.bound_checks;
    into.bound_violations += from.bound_violations;
    for (std::size_t b = 0; b < into.selection_by_degree.size(); ++b) {
        into.selection_by_degree[b][0] += from.selection_by_degree[b][0];
        into.selection_by_degree[b][1] += from.selection_by_degree[b][1];
    }
    for (const auto& [v, acc] : from.cv_by_node) {
        CvAccum& a = into.cv_by_node[v];
        if (a.n == 0) {
            a = acc;
            continue;
        }
        // Chan parallel combine
        const double delta = acc.mean - a.mean;
        const std::uint64_t n = a.n + acc.n;
        a.m2 += acc.m2 + delta * delta * static_cast<double>(a.n) *
                             static_cast<double>(acc.n) / static_cast<double>(n);
        a.mean += delta * static_cast<double>(acc.n) / static_cast<double>(n);
        a.n = n;
    }
}

} // namespace

RunResult run_queries(const Graph& g, const AnyModel& model, const CostModelParams& params,
                      std::span<const VertexId> queries, const RunOptions& opts) {
    if (opts.workers < 1) throw Error("worker count must be >= 1");

    RunResult result;
    result.paths.resize(queries.size());
    std::vector<std::uint32_t> path_lengths(queries.size(), 0);

    std::atomic<std::uint64_t> next{0};
    std::mutex merge_mu;
    std::exception_ptr first_error;

    const auto t0 = std::chrono::steady_clock::now();
    auto worker = [&]() {
        LocalStats ls;
        SamplerScratch scratch;
        try {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= queries.size()) break;
                const VertexId start = queries[i];
                ++ls.s.queries;
                if (start >= g.num_vertices()) {
                    ++ls.s.query_errors;
                    continue;
                }
                std::visit(
                    [&](const auto& m) {
                        walk_query(g, m, params, opts, start, i, result.paths[i], ls, scratch);
                    },
                    model);
                path_lengths[i] = static_cast<std::uint32_t>(result.paths[i].size());
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(merge_mu);
            if (!first_error) first_error = std::current_exception();
        }
        std::lock_guard<std::mutex> lock(merge_mu);
        merge_stats(result.stats, ls.s);
    };

    if (opts.workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(opts.workers);
        for (std::uint32_t w = 0; w < opts.workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    const auto t1 = std::chrono::steady_clock::now();
    result.stats.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    result.stats.path_lengths = std::move(path_lengths);
    return result;
}

std::vector<SweepRow> selection_ratio_sweep(const Graph& base, const AnyModel& model,
                                            const CostModelParams& params,
                                            std::span<const double> alphas,
                                            std::span<const VertexId> queries,
                                            const RunOptions& opts) {
    std::vector<SweepRow> rows;
    rows.reserve(alphas.size());
    RunOptions run_opts = opts;
    run_opts.mode = SamplerMode::Adaptive;
    for (const double alpha : alphas) {
        WeightGenSpec spec;
        spec.kind = WeightGenSpec::Kind::Pareto;
        spec.alpha = alpha;
        // one draw seed for every row: only the shape changes between rows
        spec.seed = derive_seed(opts.seed, 0x7377656570ULL);
        const Graph g = synthesize_weights(base, spec);
        const RunResult rr = run_queries(g, model, params, queries, run_opts);
        const std::uint64_t total = rr.stats.select_erjs + rr.stats.select_ervs;
        SweepRow row{};
        row.alpha = alpha;
        row.erjs_steps = rr.stats.select_erjs;
        row.ervs_steps = rr.stats.select_ervs;
        row.pct_erjs = total ? 100.0 * static_cast<double>(rr.stats.select_erjs) /
                                   static_cast<double>(total)
                             : 0.0;
        row.pct_ervs = total ? 100.0 - row.pct_erjs : 0.0;
        rows.push_back(row);
    }
    return rows;
}

void write_paths(const std::string& path, const std::vector<std::vector<VertexId>>& paths) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open paths output file: " + path);
    for (const auto& p : paths) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out << ' ';
            out << p[i];
        }
        out << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

std::vector<VertexId> all_vertices(const Graph& g) {
    std::vector<VertexId> v(g.num_vertices());
    std::iota(v.begin(), v.end(), VertexId{0});
    return v;
}

} // namespace dynwalk
