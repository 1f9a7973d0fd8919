#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynwalk/dsl/analyzer.hpp"
#include "dynwalk/dsl/ast.hpp"
#include "dynwalk/dsl/estimator.hpp"
#include "dynwalk/graph.hpp"
#include "dynwalk/types.hpp"
#include "dynwalk/walk_state.hpp"

namespace dynwalk {

// Workload contract shared by every model:
//   weight(g, st, e)            transition weight w~ = w * h for one edge
//   estimation_flag()           bound-estimation granularity
//   estimate_bound(g, st)       c >= max over N(cur) of w~ (unless flag NONE)
//   estimate_weight_sum(g, st)  estimate of sum over N(cur) of w~
//   max_steps()                 hard cap on walk length (schema length etc.)
//
// Models are immutable and shared across workers; all state lives in
// WalkerState. Estimators mirror what the analyzer derives for the
// equivalent weight-function source, so builtin and DSL runs make the
// same sampler decisions.

// w == 1: the transition weight is the raw edge property.
struct StaticWalk {
    bool weighted = true;

    double weight(const Graph& g, const WalkerState&, EdgeIndex e) const {
        return weighted ? static_cast<double>(g.edge_prop(e)) : 1.0;
    }
    EstimationFlag estimation_flag() const {
        return weighted ? EstimationFlag::PerStep : EstimationFlag::PerKernel;
    }
    double estimate_bound(const Graph& g, const WalkerState& st) const {
        return weighted ? g.node_prop_max(st.cur) : 1.0;
    }
    double estimate_weight_sum(const Graph& g, const WalkerState& st) const {
        return weighted ? g.node_prop_sum(st.cur)
                        : static_cast<double>(g.degree(st.cur));
    }
    std::uint32_t max_steps() const { return std::numeric_limits<std::uint32_t>::max(); }
    std::string name() const { return weighted ? "static" : "static-unw"; }
};

// Second-order weights keyed on the distance between the previous node and
// the candidate: 1/a for a return (dist 0), 1 for a neighbor of the previous
// node (dist 1), 1/b otherwise. The first step has no previous node and
// falls back to the raw property weight.
struct Node2Vec {
    double a = 2.0;
    double b = 0.5;
    bool weighted = true;

    double weight(const Graph& g, const WalkerState& st, EdgeIndex e) const {
        const double h = weighted ? static_cast<double>(g.edge_prop(e)) : 1.0;
        if (!st.has_prev()) return h;
        const VertexId u = g.edge_target(e);
        if (u == st.prev) return h / a;
        if (g.has_edge(st.prev, u)) return h;
        return h / b;
    }
    EstimationFlag estimation_flag() const {
        return weighted ? EstimationFlag::PerStep : EstimationFlag::PerKernel;
    }
    double max_w() const { return std::max({1.0 / a, 1.0, 1.0 / b}); }
    double estimate_bound(const Graph& g, const WalkerState& st) const {
        // branch-wise, with the same operation order as weight(): composing
        // max(1/a,1,1/b)*MAX(h) instead could round one ulp below h/b
        const double hmax = weighted ? g.node_prop_max(st.cur) : 1.0;
        return std::max({hmax / a, hmax, hmax / b});
    }
    double estimate_weight_sum(const Graph& g, const WalkerState& st) const {
        // unique branch values {h/a, h, h/b}, indexed array -> per-node SUM
        if (weighted) {
            const double s = g.node_prop_sum(st.cur);
            return (s / a + s + s / b) / 3.0;
        }
        return ((1.0 / a + 1.0 + 1.0 / b) / 3.0) * static_cast<double>(g.degree(st.cur));
    }
    std::uint32_t max_steps() const { return std::numeric_limits<std::uint32_t>::max(); }
    std::string name() const { return weighted ? "node2vec" : "node2vec-unw"; }
};

// Walks constrained to follow an ordered label schema; a step's weight is
// zero unless the edge label matches schema[step], so schema breaks surface
// as dead ends.
struct MetaPath {
    std::vector<Label> schema = {0, 1, 2, 3, 4};
    bool weighted = true;

    double weight(const Graph& g, const WalkerState& st, EdgeIndex e) const {
        if (st.step >= schema.size())
            throw Error("metapath walk stepped beyond its schema");
        const double h = weighted ? static_cast<double>(g.edge_prop(e)) : 1.0;
        return g.edge_label(e) == schema[st.step] ? h : 0.0;
    }
    EstimationFlag estimation_flag() const {
        return weighted ? EstimationFlag::PerStep : EstimationFlag::PerKernel;
    }
    double estimate_bound(const Graph& g, const WalkerState& st) const {
        // branch values {h, 0} / {1, 0}
        return weighted ? g.node_prop_max(st.cur) : 1.0;
    }
    double estimate_weight_sum(const Graph& g, const WalkerState& st) const {
        if (weighted) return (g.node_prop_sum(st.cur) + 0.0) / 2.0;
        return ((1.0 + 0.0) / 2.0) * static_cast<double>(g.degree(st.cur));
    }
    std::uint32_t max_steps() const { return static_cast<std::uint32_t>(schema.size()); }
    std::string name() const { return weighted ? "metapath" : "metapath-unw"; }
};

// Degree-aware second-order weights: neighbors of the previous node get the
// gamma-boosted branch, everything else (including the previous node itself)
// the plain branch; both scale with max(d(cur), d(prev)). First step falls
// back to the raw property weight.
struct SecondOrderPr {
    double gamma = 0.2;
    bool weighted = true;

    double weight(const Graph& g, const WalkerState& st, EdgeIndex e) const {
        const double h = weighted ? static_cast<double>(g.edge_prop(e)) : 1.0;
        if (!st.has_prev()) return h;
        const double dcur = static_cast<double>(g.degree(st.cur));
        const double dprev = static_cast<double>(st.prev_degree);
        const double maxd = std::max(dcur, dprev);
        const VertexId u = g.edge_target(e);
        if (u != st.prev && g.has_edge(st.prev, u))
            return h * ((1.0 - gamma) / dcur + gamma / dprev) * maxd;
        return h * ((1.0 - gamma) / dcur) * maxd;
    }
    EstimationFlag estimation_flag() const {
        return weighted ? EstimationFlag::PerStep : EstimationFlag::PerKernel;
    }
    double estimate_bound(const Graph& g, const WalkerState& st) const {
        // branch maxima in the same operation order as weight()
        const double hmax = weighted ? g.node_prop_max(st.cur) : 1.0;
        const double dcur = static_cast<double>(g.degree(st.cur));
        const double dprev = st.has_prev() ? static_cast<double>(st.prev_degree) : dcur;
        const double maxd = std::max(dcur, dprev);
        const double boosted = hmax * ((1.0 - gamma) / dcur + gamma / dprev) * maxd;
        const double plain = hmax * ((1.0 - gamma) / dcur) * maxd;
        return std::max({hmax, boosted, plain});
    }
    double estimate_weight_sum(const Graph& g, const WalkerState& st) const {
        const double dcur = static_cast<double>(g.degree(st.cur));
        const double dprev = st.has_prev() ? static_cast<double>(st.prev_degree) : dcur;
        const double maxd = std::max(dcur, dprev);
        const double s = weighted ? g.node_prop_sum(st.cur) : 1.0;
        const double boosted = s * ((1.0 - gamma) / dcur + gamma / dprev) * maxd;
        const double plain = s * ((1.0 - gamma) / dcur) * maxd;
        const double avg = (s + boosted + plain) / 3.0;
        return weighted ? avg : avg * dcur;
    }
    std::uint32_t max_steps() const { return std::numeric_limits<std::uint32_t>::max(); }
    std::string name() const { return weighted ? "pr2" : "pr2-unw"; }
};

// Weight function compiled from source: the interpreter supplies weight(),
// the analysis result supplies the flag and the derived estimators, and the
// label aggregates required by the preprocess plan are materialized up
// front. Rebuild the model if the graph's labels change.
class DslWalk {
public:
    DslWalk(dsl::Program prog, const Graph& g);

    double weight(const Graph& g, const WalkerState& st, EdgeIndex e) const;
    EstimationFlag estimation_flag() const { return impl_->analysis.flag; }
    double estimate_bound(const Graph& g, const WalkerState& st) const;
    double estimate_weight_sum(const Graph& g, const WalkerState& st) const;
    // The reserved hyperparameter `walk_length` caps the walk (schema-bound
    // workloads declare it); otherwise the run configuration decides.
    std::uint32_t max_steps() const { return impl_->max_steps; }
    std::string name() const { return "dsl:" + impl_->program.source_name; }

    const dsl::Program& program() const { return impl_->program; }
    const dsl::AnalysisResult& analysis() const { return impl_->analysis; }

private:
    struct Impl {
        dsl::Program program;
        dsl::AnalysisResult analysis;
        std::uint32_t max_steps = std::numeric_limits<std::uint32_t>::max();
        std::vector<double> label_max; // per-node, only when the plan needs labels
        std::vector<double> label_sum;
    };

    dsl::EstimationInputs inputs(const Graph& g, const WalkerState& st) const;

    std::shared_ptr<const Impl> impl_;
};

using AnyModel = std::variant<StaticWalk, Node2Vec, MetaPath, SecondOrderPr, DslWalk>;

inline std::string model_name(const AnyModel& m) {
    return std::visit([](const auto& v) { return v.name(); }, m);
}

inline EstimationFlag model_flag(const AnyModel& m) {
    return std::visit([](const auto& v) { return v.estimation_flag(); }, m);
}

inline std::uint32_t model_max_steps(const AnyModel& m) {
    return std::visit([](const auto& v) { return v.max_steps(); }, m);
}

inline double model_weight(const AnyModel& m, const Graph& g, const WalkerState& st, EdgeIndex e) {
    return std::visit([&](const auto& v) { return v.weight(g, st, e); }, m);
}

// Transition probabilities over N(cur) for one state; nullopt on a dead end
// (every transition weight zero). The exact ground truth used by tests.
std::optional<std::vector<double>> transition_probs(const Graph& g, const WalkerState& st,
                                                    const AnyModel& model);

// Built-in model lookup for CLI use: static, static-unw, node2vec,
// node2vec-unw, metapath, metapath-unw, pr2, pr2-unw.
struct ModelParams {
    double a = 2.0;
    double b = 0.5;
    double gamma = 0.2;
    std::vector<Label> schema = {0, 1, 2, 3, 4};
};

AnyModel make_builtin_model(const std::string& name, const ModelParams& params);

} // namespace dynwalk
