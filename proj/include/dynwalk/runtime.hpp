#pragma once

#include <array>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynwalk/cost_model.hpp"
#include "dynwalk/models.hpp"
#include "dynwalk/samplers.hpp"

namespace dynwalk {

enum class SamplerMode { Adaptive, ForceErvs, ForceErjs, ForceIts, ForceAls, ErvsNoJump };

SamplerMode parse_sampler_mode(const std::string& name);
const char* sampler_mode_name(SamplerMode mode);

struct RunOptions {
    SamplerMode mode = SamplerMode::Adaptive;
    std::uint32_t walk_length = 80;
    std::uint32_t workers = 1;
    std::uint64_t seed = 0;
    std::uint64_t erjs_cap_per_degree = 64;
    // Verifies est_max >= scanned max at every decision point (test mode).
    bool check_bounds = false;
    // Debug hook for the self-test: scales every rejection bound, <1.0
    // deliberately breaks soundness so the checker must fire.
    double bound_scale = 1.0;
    // Records per-node weight-sum samples across steps (CV histogram input).
    bool collect_cv = false;
};

// Welford accumulator for one node's weight-sum samples.
struct CvAccum {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d1 = x - mean;
        mean += d1 / static_cast<double>(n);
        m2 += d1 * (x - mean);
    }
    double cv() const {
        if (n < 2 || mean == 0.0) return 0.0;
        return std::sqrt(m2 / static_cast<double>(n)) / mean * 100.0;
    }
};

struct RunStats {
    std::uint64_t queries = 0;
    std::uint64_t query_errors = 0;
    std::uint64_t dead_ends = 0;
    std::uint64_t steps = 0;
    std::uint64_t select_ervs = 0;
    std::uint64_t select_erjs = 0;
    std::uint64_t select_its = 0;
    std::uint64_t select_als = 0;
    std::uint64_t trials = 0;
    std::uint64_t weight_reads = 0;
    std::uint64_t rng_draws = 0;
    std::uint64_t erjs_fallbacks = 0;
    std::uint64_t bound_checks = 0;
    std::uint64_t bound_violations = 0;
    // reservoir/rejection selections bucketed by floor(log2(degree))
    std::array<std::array<std::uint64_t, 2>, 33> selection_by_degree{};
    std::vector<std::uint32_t> path_lengths; // per query, in query order
    std::unordered_map<VertexId, CvAccum> cv_by_node;
    double wall_ms = 0.0;
};

struct RunResult {
    std::vector<std::vector<VertexId>> paths; // query order; empty on per-query error
    RunStats stats;
};

// Executes one walk per start vertex across a worker pool. Workers claim
// queries through a shared atomic counter; per-query RNG streams are derived
// from (seed, query id), so output is byte-identical for any worker count.
// An out-of-range start vertex is recorded as a per-query error and leaves
// the other queries untouched.
RunResult run_queries(const Graph& g, const AnyModel& model, const CostModelParams& params,
                      std::span<const VertexId> queries, const RunOptions& opts);

struct SweepRow {
    double alpha;
    std::uint64_t erjs_steps;
    std::uint64_t ervs_steps;
    double pct_erjs;
    double pct_ervs;
};

// Regenerates Pareto(alpha) properties per row (same draw seed across rows,
// so only the shape changes), runs the batch adaptively, and reports the
// sampler selection split.
std::vector<SweepRow> selection_ratio_sweep(const Graph& base, const AnyModel& model,
                                            const CostModelParams& params,
                                            std::span<const double> alphas,
                                            std::span<const VertexId> queries,
                                            const RunOptions& opts);

void write_paths(const std::string& path, const std::vector<std::vector<VertexId>>& paths);

std::vector<VertexId> all_vertices(const Graph& g);

} // namespace dynwalk
