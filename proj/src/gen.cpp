#include "dynwalk/gen.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dynwalk/rng.hpp"

namespace dynwalk {

namespace {

Graph generate_uniform(const TopologySpec& spec) {
    CountingRng rng(derive_seed(spec.seed, 0x746f706fULL));
    std::vector<EdgeRecord> edges;
    edges.reserve(std::uint64_t(spec.n) * spec.deg);
    for (std::uint32_t v = 0; v < spec.n; ++v) {
        for (std::uint32_t k = 0; k < spec.deg; ++k) {
            VertexId u = static_cast<VertexId>(rng.bounded(spec.n));
            for (int tries = 0; u == v && tries < 16; ++tries)
                u = static_cast<VertexId>(rng.bounded(spec.n));
            if (u == v) continue; // tiny graphs may keep a few self-loops out
            edges.push_back(EdgeRecord{v, u, 1.0f, 0});
        }
    }
    return Graph::build(std::move(edges), false, spec.mirror, spec.n);
}

Graph generate_preferential(const TopologySpec& spec) {
    CountingRng rng(derive_seed(spec.seed, 0x6261746f706fULL));
    const std::uint32_t m = std::max<std::uint32_t>(1, spec.deg);
    std::vector<EdgeRecord> edges;
    edges.reserve(std::uint64_t(spec.n) * m);
    // endpoint pool holds one entry per edge endpoint: attachment probability
    // proportional to current degree
    std::vector<VertexId> pool;
    pool.reserve(std::uint64_t(spec.n) * m * 2);

    const std::uint32_t seed_nodes = std::min(spec.n, m + 1);
    for (std::uint32_t v = 1; v < seed_nodes; ++v) {
        edges.push_back(EdgeRecord{v, v - 1, 1.0f, 0});
        pool.push_back(v);
        pool.push_back(v - 1);
    }
    std::vector<VertexId> picked;
    for (std::uint32_t v = seed_nodes; v < spec.n; ++v) {
        picked.clear();
        for (std::uint32_t k = 0; k < m; ++k) {
            VertexId u = kInvalidVertex;
            for (int tries = 0; tries < 32; ++tries) {
                const VertexId cand = pool.empty()
                                          ? static_cast<VertexId>(rng.bounded(v))
                                          : pool[rng.bounded(pool.size())];
                if (cand != v &&
                    std::find(picked.begin(), picked.end(), cand) == picked.end()) {
                    u = cand;
                    break;
                }
            }
            if (u == kInvalidVertex) continue;
            picked.push_back(u);
            edges.push_back(EdgeRecord{v, u, 1.0f, 0});
            pool.push_back(v);
            pool.push_back(u);
        }
    }
    return Graph::build(std::move(edges), false, spec.mirror, spec.n);
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw Error("expected key=value in spec segment '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

double to_number(const std::map<std::string, std::string>& kv, const std::string& key,
                 double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw Error("spec key '" + key + "' is not a number: " + it->second);
    }
}

} // namespace

Graph generate_topology(const TopologySpec& spec) {
    if (spec.n == 0) throw Error("topology spec requires n >= 1");
    switch (spec.kind) {
    case TopologySpec::Kind::UniformRandom: return generate_uniform(spec);
    case TopologySpec::Kind::PreferentialAttachment: return generate_preferential(spec);
    }
    throw Error("unknown topology kind");
}

TopologySpec parse_topology_spec(const std::string& text, std::uint64_t seed, bool mirror) {
    const std::size_t colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    TopologySpec spec;
    spec.seed = seed;
    spec.mirror = mirror;
    if (kind == "uniform") {
        spec.kind = TopologySpec::Kind::UniformRandom;
    } else if (kind == "ba") {
        spec.kind = TopologySpec::Kind::PreferentialAttachment;
    } else {
        throw Error("unknown topology kind '" + kind + "' (expected uniform or ba)");
    }
    const auto kv = parse_kv(rest);
    spec.n = static_cast<std::uint32_t>(to_number(kv, "n", 1000));
    spec.deg = static_cast<std::uint32_t>(to_number(kv, "deg", 8));
    return spec;
}

WeightGenSpec parse_weight_spec(const std::string& text, std::uint64_t seed) {
    const std::size_t colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    WeightGenSpec spec;
    spec.seed = seed;
    if (kind == "uniform") {
        spec.kind = WeightGenSpec::Kind::UniformReal;
        const auto kv = parse_kv(rest);
        spec.low = to_number(kv, "low", 1.0);
        spec.high = to_number(kv, "high", 5.0);
    } else if (kind == "pareto") {
        spec.kind = WeightGenSpec::Kind::Pareto;
        const auto kv = parse_kv(rest);
        spec.alpha = to_number(kv, "alpha", 1.0);
    } else if (kind == "degree") {
        spec.kind = WeightGenSpec::Kind::DegreeBased;
    } else if (kind == "labels") {
        spec.kind = WeightGenSpec::Kind::UniformIntLabel;
        const auto kv = parse_kv(rest);
        spec.low = to_number(kv, "low", 0.0);
        spec.high = to_number(kv, "high", 4.0);
    } else {
        throw Error("unknown weight spec '" + kind +
                    "' (expected uniform, pareto, degree, labels)");
    }
    return spec;
}

} // namespace dynwalk
