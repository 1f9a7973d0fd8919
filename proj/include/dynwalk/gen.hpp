#pragma once

#include <string>

#include "dynwalk/graph.hpp"

namespace dynwalk {

// Synthetic topologies for benchmarks and fixtures. "uniform" draws
// independent random endpoints (near-constant out-degrees); "ba" grows a
// preferential-attachment graph (heavy-tailed degrees). Both are
// deterministic in the seed. Properties start at 1.0; apply
// synthesize_weights afterwards.
struct TopologySpec {
    enum class Kind { UniformRandom, PreferentialAttachment };

    Kind kind = Kind::UniformRandom;
    std::uint32_t n = 1000;
    std::uint32_t deg = 8; // out-edges created per node
    std::uint64_t seed = 0;
    bool mirror = false; // add reverse twins (undirected view)
};

Graph generate_topology(const TopologySpec& spec);

// Spec string forms: "uniform:n=1000,deg=8" or "ba:n=1000,deg=8".
TopologySpec parse_topology_spec(const std::string& text, std::uint64_t seed, bool mirror);

// Weight spec strings: "uniform:low=1,high=5", "pareto:alpha=1.5", "degree".
WeightGenSpec parse_weight_spec(const std::string& text, std::uint64_t seed);

} // namespace dynwalk
