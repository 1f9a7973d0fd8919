#pragma once

#include <variant>

#include "dynwalk/models.hpp"

namespace dynwalk {

struct ProfileConfig {
    double node_fraction = 0.01;        // share of nodes probed per repetition
    std::uint32_t min_nodes = 64;       // probe at least this many (graph permitting)
    std::uint32_t neighbors_per_node = 32;
    std::uint32_t repetitions = 5;
    std::uint64_t seed = 0;
};

struct CostModelParams {
    double edge_cost_ratio = 1.0; // random-access / sequential-access cost per edge
    bool profiled = false;        // false: externally supplied (flag or env override)
};

enum class SamplerChoice { Ervs, Erjs };

// Per-step choice plus the estimates that justified it.
struct SamplerDecision {
    SamplerChoice choice = SamplerChoice::Ervs;
    double est_max = 0.0;
    double est_sum = 0.0;
    std::uint32_t degree = 0;
};

// Times two weight-evaluation micro-kernels over a node sample: one touches
// one random neighbor per evaluation (rejection's access pattern, including
// the random draw that picks it), the other scans slices sequentially
// (reservoir's pattern). Returns the median per-edge time ratio across
// repetitions, after a warm-up pass. Zero-duration measurements retry with
// more rounds; a graph too small to ever produce a nonzero reading is a
// configuration error.
CostModelParams profile_edge_cost_ratio(const Graph& g, const AnyModel& model,
                                        const ProfileConfig& cfg);

// First-order selection: prefer rejection iff ratio * est_max < est_sum.
// Both sides estimate per-edge memory traffic: rejection expects
// degree * max / sum trials while the reservoir always pays degree reads, so
// the degree cancels. Workloads with flag NONE always take the reservoir.
template <typename Model>
SamplerDecision decide_sampler(const Graph& g, const WalkerState& st, const Model& model,
                               const CostModelParams& params) {
    SamplerDecision d;
    d.degree = g.degree(st.cur);
    if (model.estimation_flag() == EstimationFlag::None) return d;
    d.est_max = model.estimate_bound(g, st);
    d.est_sum = model.estimate_weight_sum(g, st);
    if (params.edge_cost_ratio * d.est_max < d.est_sum) d.choice = SamplerChoice::Erjs;
    return d;
}

inline SamplerDecision decide_sampler(const Graph& g, const WalkerState& st,
                                      const AnyModel& model, const CostModelParams& params) {
    return std::visit([&](const auto& m) { return decide_sampler(g, st, m, params); }, model);
}

} // namespace dynwalk
