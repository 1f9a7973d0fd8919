#pragma once

#include <string>
#include <vector>

#include "dynwalk/cost_model.hpp"
#include "dynwalk/runtime.hpp"

namespace dynwalk {

// Context echoed into the stats report so a run is reproducible from the
// report alone.
struct ReportContext {
    std::string graph_source;
    std::uint32_t graph_vertices = 0;
    std::uint64_t graph_edges = 0;
    std::string model;
    std::string mode;
    std::uint32_t workers = 1;
    std::uint64_t seed = 0;
    std::uint32_t walk_length = 80;
    std::uint64_t queries = 0;
};

// Line-oriented key=value stats report, schema dynwalk.stats.v1. wall_ms is
// the only volatile key for a fixed config+seed (and edge_cost_ratio when it
// was profiled rather than supplied).
std::string render_stats(const ReportContext& ctx, const CostModelParams& params,
                         const RunStats& stats);

std::string render_sweep(const std::vector<SweepRow>& rows);

void write_text_file(const std::string& path, const std::string& text);

} // namespace dynwalk
