#include "dynwalk/models.hpp"

#include "dynwalk/dsl/interp.hpp"
#include "dynwalk/samplers.hpp"

namespace dynwalk {

DslWalk::DslWalk(dsl::Program prog, const Graph& g) {
    auto impl = std::make_shared<Impl>();
    impl->program = std::move(prog);
    impl->analysis = dsl::analyze(impl->program);
    for (const auto& [name, value] : impl->program.scalar_params) {
        if (name == "walk_length") {
            if (!(value >= 1.0) || value != std::floor(value))
                throw Error("walk_length must be a positive integer");
            impl->max_steps = static_cast<std::uint32_t>(value);
        }
    }
    if (impl->analysis.uses_label) {
        // generated preprocess step: per-node MAX/SUM over the label array
        const std::uint32_t nv = g.num_vertices();
        impl->label_max.assign(nv, 0.0);
        impl->label_sum.assign(nv, 0.0);
        for (std::uint32_t v = 0; v < nv; ++v) {
            const NeighborSlice slice = g.neighbors(v);
            double mx = 0.0, sum = 0.0;
            for (std::size_t i = 0; i < slice.size(); ++i) {
                const double lab = slice[i].label;
                if (lab > mx) mx = lab;
                sum += lab;
            }
            impl->label_max[v] = mx;
            impl->label_sum[v] = sum;
        }
    }
    impl_ = std::move(impl);
}

double DslWalk::weight(const Graph& g, const WalkerState& st, EdgeIndex e) const {
    return dsl::eval_weight(impl_->program, g, st, e);
}

dsl::EstimationInputs DslWalk::inputs(const Graph& g, const WalkerState& st) const {
    dsl::EstimationInputs in;
    in.prop_max = g.node_prop_max(st.cur);
    in.prop_sum = g.node_prop_sum(st.cur);
    if (!impl_->label_max.empty()) {
        in.label_max = impl_->label_max[st.cur];
        in.label_sum = impl_->label_sum[st.cur];
    }
    in.deg_cur = static_cast<double>(g.degree(st.cur));
    in.deg_prev = st.has_prev() ? static_cast<double>(st.prev_degree) : in.deg_cur;
    in.step = static_cast<double>(st.step);
    return in;
}

double DslWalk::estimate_bound(const Graph& g, const WalkerState& st) const {
    return dsl::eval_max_estimate(impl_->analysis, inputs(g, st));
}

double DslWalk::estimate_weight_sum(const Graph& g, const WalkerState& st) const {
    return dsl::eval_sum_estimate(impl_->analysis, inputs(g, st));
}

std::optional<std::vector<double>> transition_probs(const Graph& g, const WalkerState& st,
                                                    const AnyModel& model) {
    return std::visit([&](const auto& m) { return oracle_enumerate(g, st, m); }, model);
}

AnyModel make_builtin_model(const std::string& name, const ModelParams& p) {
    if (name == "static") return StaticWalk{true};
    if (name == "static-unw") return StaticWalk{false};
    if (name == "node2vec") return Node2Vec{p.a, p.b, true};
    if (name == "node2vec-unw") return Node2Vec{p.a, p.b, false};
    if (name == "metapath") return MetaPath{p.schema, true};
    if (name == "metapath-unw") return MetaPath{p.schema, false};
    if (name == "pr2") return SecondOrderPr{p.gamma, true};
    if (name == "pr2-unw") return SecondOrderPr{p.gamma, false};
    throw Error("unknown model '" + name +
                "' (expected static[-unw], node2vec[-unw], metapath[-unw], pr2[-unw])");
}

} // namespace dynwalk
