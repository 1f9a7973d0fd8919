#include "dynwalk/cost_model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "dynwalk/rng.hpp"

namespace dynwalk {

namespace {

volatile double g_profile_sink = 0.0;

using Clock = std::chrono::steady_clock;

// Walker states used by the probes: step 1 with the node's first neighbor as
// the nominal previous node, so second-order weight functions exercise their
// real code path.
WalkerState probe_state(const Graph& g, VertexId v) {
    WalkerState st;
    st.reset(0, v);
    const NeighborSlice slice = g.neighbors(v);
    if (!slice.empty()) {
        const VertexId prev = slice[0].target;
        if (g.degree(prev) > 0) {
            st.prev = prev;
            st.prev_degree = g.degree(prev);
            st.step = 1;
        }
    }
    return st;
}

} // namespace

CostModelParams profile_edge_cost_ratio(const Graph& g, const AnyModel& model,
                                        const ProfileConfig& cfg) {
    if (!(cfg.node_fraction > 0.0) || cfg.node_fraction > 1.0)
        throw Error("profile node_fraction must be in (0, 1]");
    if (cfg.neighbors_per_node == 0 || cfg.repetitions == 0)
        throw Error("profile neighbors_per_node and repetitions must be >= 1");

    // collect the probe set once: nodes with at least one out-edge
    std::vector<VertexId> nodes;
    const std::uint32_t nv = g.num_vertices();
    CountingRng rng(derive_seed(cfg.seed, 0x70726f66ULL));
    std::uint64_t want = static_cast<std::uint64_t>(std::ceil(cfg.node_fraction * nv));
    want = std::max<std::uint64_t>(want, cfg.min_nodes);
    for (std::uint64_t tries = 0; tries < want * 8 && nodes.size() < want && nv > 0; ++tries) {
        const VertexId v = static_cast<VertexId>(rng.bounded(nv));
        if (g.degree(v) > 0) nodes.push_back(v);
    }
    if (nodes.empty())
        throw Error("profiling found no node with out-edges");

    return std::visit([&](const auto& m) {
        std::vector<WalkerState> states;
        states.reserve(nodes.size());
        for (const VertexId v : nodes)
            states.push_back(probe_state(g, v));

        auto random_access_pass = [&](std::uint64_t rounds) {
            double sink = 0.0;
            const auto t0 = Clock::now();
            for (std::uint64_t r = 0; r < rounds; ++r) {
                for (const WalkerState& st : states) {
                    const std::uint32_t d = g.degree(st.cur);
                    const EdgeIndex e0 = g.out_edge_begin(st.cur);
                    const std::uint32_t k = std::min(d, cfg.neighbors_per_node);
                    for (std::uint32_t i = 0; i < k; ++i)
                        sink += m.weight(g, st, e0 + rng.bounded(d));
                }
            }
            const auto t1 = Clock::now();
            g_profile_sink = sink;
            return std::chrono::duration<double>(t1 - t0).count();
        };
        auto sequential_pass = [&](std::uint64_t rounds) {
            double sink = 0.0;
            const auto t0 = Clock::now();
            for (std::uint64_t r = 0; r < rounds; ++r) {
                for (const WalkerState& st : states) {
                    const std::uint32_t d = g.degree(st.cur);
                    const EdgeIndex e0 = g.out_edge_begin(st.cur);
                    const std::uint32_t k = std::min(d, cfg.neighbors_per_node);
                    for (std::uint32_t i = 0; i < k; ++i)
                        sink += m.weight(g, st, e0 + i);
                }
            }
            const auto t1 = Clock::now();
            g_profile_sink = sink;
            return std::chrono::duration<double>(t1 - t0).count();
        };

        // warm-up
        random_access_pass(1);
        sequential_pass(1);

        std::vector<double> ratios;
        std::uint64_t rounds = 1;
        for (std::uint32_t rep = 0; rep < cfg.repetitions; ++rep) {
            double rjs = 0.0, rvs = 0.0;
            bool ok = false;
            for (int attempt = 0; attempt < 24; ++attempt) {
                rjs = random_access_pass(rounds);
                rvs = sequential_pass(rounds);
                if (rjs > 0.0 && rvs > 0.0) {
                    ok = true;
                    break;
                }
                rounds *= 2; // clock resolution too coarse for this graph
            }
            if (!ok)
                throw Error("profiling produced zero-duration measurements; graph too small");
            ratios.push_back(rjs / rvs);
        }
        std::sort(ratios.begin(), ratios.end());
        CostModelParams params;
        params.edge_cost_ratio = ratios[ratios.size() / 2];
        params.profiled = true;
        if (!(params.edge_cost_ratio > 0.0) || !std::isfinite(params.edge_cost_ratio))
            throw Error("profiled edge cost ratio is not positive and finite");
        return params;
    }, model);
}

} // namespace dynwalk
