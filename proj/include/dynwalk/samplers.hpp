#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dynwalk/graph.hpp"
#include "dynwalk/types.hpp"
#include "dynwalk/walk_state.hpp"

namespace dynwalk {

// Per-sample instrumentation. The counters are exact and are asserted by the
// acceptance tests: the reservoir kernels read each neighbor weight exactly
// once (weight_reads == degree), rejection reads one weight per trial
// (weight_reads == trials, plus one reservoir pass after a cap overrun).
struct SampleOutcome {
    VertexId next = kInvalidVertex; // kInvalidVertex: dead end
    std::uint64_t trials = 1;       // rejection attempts; 1 for single-shot kernels
    std::uint64_t weight_reads = 0; // model weight evaluations
    std::uint64_t rng_draws = 0;
    bool fell_back = false;         // rejection hit its trial cap, reservoir finished the step

    bool dead_end() const { return next == kInvalidVertex; }
};

// Upper bound c >= max over N(cur) of the transition weight. Any valid bound
// leaves the acceptance distribution exact; looser bounds only cost trials.
struct BoundEstimate {
    enum class Source { PerKernelConst, PerStepComposed, ExactScan };

    double upper = 0.0;
    Source source = Source::PerStepComposed;
};

// Reusable buffers for the table-building reference samplers, one per worker.
struct SamplerScratch {
    std::vector<double> prefix;
    std::vector<double> cell_accept;
    std::vector<std::uint32_t> cell_alias;
    std::vector<std::uint32_t> small_cells;
    std::vector<std::uint32_t> large_cells;
};

namespace detail {

inline void check_weight(double w) {
    if (w < 0.0 || !std::isfinite(w))
        throw Error("model returned a negative or non-finite weight: " + std::to_string(w));
}

} // namespace detail

// Exponential-key reservoir sampling with threshold jumps. Keys are compared
// in log space (ln(u)/w instead of u^(1/w)) to avoid underflow for large
// weights. One pass over the neighbor weights, no prefix sum, and random
// numbers only for neighbors that can actually replace the candidate: after
// each candidate update a skip threshold ln(u)/ln(k) is drawn, and key
// generation is skipped until the cumulative weight of the scanned neighbors
// crosses it. The crossing neighbor's key is drawn conditioned on beating
// the current maximum, which keeps the selection exactly weight-proportional.
template <typename Model, typename Rng>
SampleOutcome sample_ervs(const Graph& g, const WalkerState& st, const Model& model, Rng& rng) {
    SampleOutcome out;
    const std::uint32_t d = g.degree(st.cur);
    const EdgeIndex e0 = g.out_edge_begin(st.cur);
    const std::uint64_t draws0 = rng.draw_count();

    double best_log_key = -std::numeric_limits<double>::infinity();
    VertexId best = kInvalidVertex;
    double skip_remaining = 0.0;
    bool have_threshold = false;

    for (std::uint32_t i = 0; i < d; ++i) {
        const double w = model.weight(g, st, e0 + i);
        detail::check_weight(w);
        ++out.weight_reads;
        if (w == 0.0) continue; // contributes no mass, can never cross the threshold
        if (best == kInvalidVertex) {
            best_log_key = std::log(rng.open01()) / w;
            best = g.edge_target(e0 + i);
            continue;
        }
        if (!have_threshold) {
            skip_remaining = std::log(rng.open01()) / best_log_key; // positive
            have_threshold = true;
        }
        skip_remaining -= w;
        if (skip_remaining <= 0.0) {
            // replacement happens here: draw the key from (k^w, 1)
            const double floor_u = std::exp(w * best_log_key);
            const double u = floor_u + rng.open01() * (1.0 - floor_u);
            const double log_key = std::log(u) / w;
            if (log_key > best_log_key) { // ties keep the lower edge index
                best_log_key = log_key;
                best = g.edge_target(e0 + i);
            }
            have_threshold = false;
        }
    }
    out.next = best;
    out.rng_draws = rng.draw_count() - draws0;
    return out;
}

// Reservoir sampling without the jump: a fresh key for every neighbor
// (rng_draws == degree). Reference ablation and the statistical oracle for
// jump equivalence.
template <typename Model, typename Rng>
SampleOutcome sample_ervs_nojump(const Graph& g, const WalkerState& st, const Model& model,
                                 Rng& rng) {
    SampleOutcome out;
    const std::uint32_t d = g.degree(st.cur);
    const EdgeIndex e0 = g.out_edge_begin(st.cur);
    const std::uint64_t draws0 = rng.draw_count();

    double best_log_key = -std::numeric_limits<double>::infinity();
    VertexId best = kInvalidVertex;
    for (std::uint32_t i = 0; i < d; ++i) {
        const double w = model.weight(g, st, e0 + i);
        detail::check_weight(w);
        ++out.weight_reads;
        const double u = rng.open01();
        if (w == 0.0) continue;
        const double log_key = std::log(u) / w;
        if (best == kInvalidVertex || log_key > best_log_key) {
            best_log_key = log_key;
            best = g.edge_target(e0 + i);
        }
    }
    out.next = best;
    out.rng_draws = rng.draw_count() - draws0;
    return out;
}

// Rejection sampling against an upper bound: propose a uniform neighbor,
// draw y in [0, bound), read only that neighbor's weight, accept if y < w.
// The conditional acceptance distribution equals the normalized weights for
// any bound >= max w, so a loose bound costs trials, not correctness. A trial
// cap (cap_per_degree * degree) guards pathological bounds; overrunning it
// falls back to one reservoir pass and flags the outcome.
template <typename Model, typename Rng>
SampleOutcome sample_erjs(const Graph& g, const WalkerState& st, const Model& model, Rng& rng,
                          const BoundEstimate& bound, std::uint64_t cap_per_degree = 64) {
    const std::uint32_t d = g.degree(st.cur);
    SampleOutcome out;
    out.trials = 0;
    if (d == 0) return out;
    if (!(bound.upper > 0.0) || !std::isfinite(bound.upper))
        throw Error("rejection bound must be positive and finite, got " +
                    std::to_string(bound.upper));

    const EdgeIndex e0 = g.out_edge_begin(st.cur);
    const std::uint64_t draws0 = rng.draw_count();
    const std::uint64_t cap = cap_per_degree * d;
    while (out.trials < cap) {
        const std::uint64_t x = rng.bounded(d);
        const double y = rng.uniform01() * bound.upper;
        const double w = model.weight(g, st, e0 + x);
        detail::check_weight(w);
        ++out.trials;
        ++out.weight_reads;
        if (y < w) {
            out.next = g.edge_target(e0 + x);
            out.rng_draws = rng.draw_count() - draws0;
            return out;
        }
    }
    SampleOutcome fb = sample_ervs(g, st, model, rng);
    fb.fell_back = true;
    fb.trials = out.trials;
    fb.weight_reads += out.weight_reads;
    fb.rng_draws = rng.draw_count() - draws0;
    return fb;
}

// Inverse transform sampling: fresh prefix sum every step (the dynamic
// setting forbids reuse), one draw, binary search.
template <typename Model, typename Rng>
SampleOutcome sample_its(const Graph& g, const WalkerState& st, const Model& model, Rng& rng,
                         SamplerScratch& scratch) {
    SampleOutcome out;
    const std::uint32_t d = g.degree(st.cur);
    const EdgeIndex e0 = g.out_edge_begin(st.cur);
    const std::uint64_t draws0 = rng.draw_count();

    scratch.prefix.resize(d);
    double running = 0.0;
    for (std::uint32_t i = 0; i < d; ++i) {
        const double w = model.weight(g, st, e0 + i);
        detail::check_weight(w);
        ++out.weight_reads;
        running += w;
        scratch.prefix[i] = running;
    }
    if (running <= 0.0) {
        out.rng_draws = rng.draw_count() - draws0;
        return out;
    }
    const double r = rng.uniform01() * running;
    const auto it = std::upper_bound(scratch.prefix.begin(), scratch.prefix.end(), r);
    const std::uint32_t idx = std::min<std::uint32_t>(
        static_cast<std::uint32_t>(it - scratch.prefix.begin()), d - 1);
    out.next = g.edge_target(e0 + idx);
    out.rng_draws = rng.draw_count() - draws0;
    return out;
}

// Alias sampling: builds a fresh two-column table every step (mean split,
// redistribution of the excess), then samples with two draws. Models the
// cost of auxiliary-structure methods under dynamic weights.
template <typename Model, typename Rng>
SampleOutcome sample_als(const Graph& g, const WalkerState& st, const Model& model, Rng& rng,
                         SamplerScratch& scratch) {
    SampleOutcome out;
    const std::uint32_t d = g.degree(st.cur);
    const EdgeIndex e0 = g.out_edge_begin(st.cur);
    const std::uint64_t draws0 = rng.draw_count();

    auto& accept = scratch.cell_accept;
    auto& alias = scratch.cell_alias;
    auto& small = scratch.small_cells;
    auto& large = scratch.large_cells;
    accept.resize(d);
    alias.resize(d);
    small.clear();
    large.clear();

    double total = 0.0;
    for (std::uint32_t i = 0; i < d; ++i) {
        const double w = model.weight(g, st, e0 + i);
        detail::check_weight(w);
        ++out.weight_reads;
        accept[i] = w;
        total += w;
    }
    if (total <= 0.0) {
        out.rng_draws = rng.draw_count() - draws0;
        return out;
    }

    const double mean = total / d;
    for (std::uint32_t i = 0; i < d; ++i) {
        alias[i] = i;
        (accept[i] < mean ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        const std::uint32_t l = large.back();
        small.pop_back();
        large.pop_back();
        alias[s] = l;
        accept[l] -= mean - accept[s]; // donate the shortfall of cell s
        (accept[l] < mean ? small : large).push_back(l);
    }
    for (const std::uint32_t i : small) accept[i] = mean; // fp leftovers fill their cell
    for (const std::uint32_t i : large) accept[i] = mean;

    const std::uint32_t col = static_cast<std::uint32_t>(rng.bounded(d));
    const double y = rng.uniform01() * mean;
    const std::uint32_t idx = y < accept[col] ? col : alias[col];
    out.next = g.edge_target(e0 + idx);
    out.rng_draws = rng.draw_count() - draws0;
    return out;
}

// Exact transition probabilities by full scan; the ground truth for every
// goodness-of-fit test. nullopt on a dead end.
template <typename Model>
std::optional<std::vector<double>> oracle_enumerate(const Graph& g, const WalkerState& st,
                                                    const Model& model) {
    const std::uint32_t d = g.degree(st.cur);
    const EdgeIndex e0 = g.out_edge_begin(st.cur);
    std::vector<double> w(d);
    double total = 0.0;
    for (std::uint32_t i = 0; i < d; ++i) {
        const double wi = model.weight(g, st, e0 + i);
        detail::check_weight(wi);
        w[i] = wi;
        total += wi;
    }
    if (total <= 0.0) return std::nullopt;
    for (double& wi : w) wi /= total;
    return w;
}

// Exact max over the neighbor weights; test/debug companion of the derived
// bound estimators.
template <typename Model>
double scan_max_weight(const Graph& g, const WalkerState& st, const Model& model) {
    const std::uint32_t d = g.degree(st.cur);
    const EdgeIndex e0 = g.out_edge_begin(st.cur);
    double mx = 0.0;
    for (std::uint32_t i = 0; i < d; ++i)
        mx = std::max(mx, model.weight(g, st, e0 + i));
    return mx;
}

} // namespace dynwalk
