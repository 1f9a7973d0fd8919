#include "dynwalk/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dynwalk {

std::string render_stats(const ReportContext& ctx, const CostModelParams& params,
                         const RunStats& stats) {
    std::ostringstream out;
    out << "schema=dynwalk.stats.v1\n";
    out << "graph_source=" << ctx.graph_source << "\n";
    out << "graph_vertices=" << ctx.graph_vertices << "\n";
    out << "graph_edges=" << ctx.graph_edges << "\n";
    out << "model=" << ctx.model << "\n";
    out << "mode=" << ctx.mode << "\n";
    out << "workers=" << ctx.workers << "\n";
    out << "seed=" << ctx.seed << "\n";
    out << "walk_length=" << ctx.walk_length << "\n";
    out << "queries=" << ctx.queries << "\n";
    out << "edge_cost_ratio=" << params.edge_cost_ratio << "\n";
    out << "edge_cost_ratio_source=" << (params.profiled ? "profiled" : "override") << "\n";
    out << "query_errors=" << stats.query_errors << "\n";
    out << "dead_ends=" << stats.dead_ends << "\n";
    out << "steps=" << stats.steps << "\n";
    out << "select_ervs=" << stats.select_ervs << "\n";
    out << "select_erjs=" << stats.select_erjs << "\n";
    out << "select_its=" << stats.select_its << "\n";
    out << "select_als=" << stats.select_als << "\n";
    out << "trials=" << stats.trials << "\n";
    out << "weight_reads=" << stats.weight_reads << "\n";
    out << "rng_draws=" << stats.rng_draws << "\n";
    out << "erjs_fallbacks=" << stats.erjs_fallbacks << "\n";
    out << "bound_checks=" << stats.bound_checks << "\n";
    out << "bound_violations=" << stats.bound_violations << "\n";

    std::uint64_t emitted = 0, total_len = 0;
    for (const std::uint32_t len : stats.path_lengths) {
        if (len > 0) ++emitted;
        total_len += len;
    }
    out << "paths_emitted=" << emitted << "\n";
    out << "paths_total_nodes=" << total_len << "\n";
    out << "wall_ms=" << stats.wall_ms << "\n";

    out << "[selection_histogram]\n";
    for (std::size_t b = 0; b < stats.selection_by_degree.size(); ++b) {
        const auto& bucket = stats.selection_by_degree[b];
        if (bucket[0] == 0 && bucket[1] == 0) continue;
        out << "deg_bucket=2^" << b << " ervs=" << bucket[0] << " erjs=" << bucket[1] << "\n";
    }

    if (!stats.cv_by_node.empty()) {
        // CV = std/mean * 100 of each node's per-step weight sums
        static const double edges[] = {1, 2, 5, 10, 20, 50, 100, 200, 500};
        std::array<std::uint64_t, 10> hist{};
        for (const auto& [v, acc] : stats.cv_by_node) {
            if (acc.n < 2) continue;
            const double cv = acc.cv();
            std::size_t b = 0;
            while (b < 9 && cv > edges[b]) ++b;
            ++hist[b];
        }
        out << "[cv_histogram]\n";
        for (std::size_t b = 0; b < 9; ++b)
            out << "cv_le=" << edges[b] << " nodes=" << hist[b] << "\n";
        out << "cv_gt=500 nodes=" << hist[9] << "\n";
    }
    return out.str();
}

std::string render_sweep(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "[alpha_sweep]\n";
    out.setf(std::ios::fixed);
    out.precision(2);
    for (const SweepRow& row : rows) {
        out << "alpha=" << row.alpha << " pct_erjs=" << row.pct_erjs
            << " pct_ervs=" << row.pct_ervs << " erjs_steps=" << row.erjs_steps
            << " ervs_steps=" << row.ervs_steps << "\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    out << text;
    if (!out) throw Error("write failed: " + path);
}

} // namespace dynwalk
