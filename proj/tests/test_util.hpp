#pragma once

#include <cstdint>
#include <vector>

#include "dynwalk/graph.hpp"
#include "dynwalk/samplers.hpp"
#include "dynwalk/types.hpp"
#include "dynwalk/walk_state.hpp"

namespace dwt {

// Star: hub 0 with neighbors 1..4, properties {3, 2, 4, 1}.
inline dynwalk::Graph star_graph() {
    std::vector<dynwalk::EdgeRecord> edges = {
        {0, 1, 3.0f, 0}, {0, 2, 2.0f, 0}, {0, 3, 4.0f, 0}, {0, 4, 1.0f, 0}};
    return dynwalk::Graph::build(std::move(edges), false, false);
}

// Second-order fixture: prev = 0 with N(0) = {1, 2}; cur = 1 with
// N(1) = {0, 2, 3, 4}. Edge (1,3) carries property 3, everything else 1.
inline dynwalk::Graph second_order_fixture() {
    std::vector<dynwalk::EdgeRecord> edges = {
        {0, 1, 1.0f, 0}, {0, 2, 1.0f, 0},
        {1, 0, 1.0f, 0}, {1, 2, 1.0f, 0}, {1, 3, 3.0f, 0}, {1, 4, 1.0f, 0},
    };
    return dynwalk::Graph::build(std::move(edges), false, false);
}

// Walker sitting on cur=1 having arrived from prev=0 in the fixture above.
inline dynwalk::WalkerState second_order_state(const dynwalk::Graph& g) {
    dynwalk::WalkerState st;
    st.reset(0, 0);
    st.advance(g, 1);
    return st;
}

// Hub 0 with `degree` out-neighbors, properties to be synthesized.
inline dynwalk::Graph hub_graph(std::uint32_t degree) {
    std::vector<dynwalk::EdgeRecord> edges;
    edges.reserve(degree);
    for (std::uint32_t i = 0; i < degree; ++i)
        edges.push_back({0, i + 1, 1.0f, 0});
    return dynwalk::Graph::build(std::move(edges), false, false);
}

inline dynwalk::WalkerState state_at(dynwalk::VertexId v) {
    dynwalk::WalkerState st;
    st.reset(0, v);
    return st;
}

// Position of `next` within cur's adjacency slice (fixtures have no
// duplicate targets).
inline std::uint32_t neighbor_index(const dynwalk::Graph& g, dynwalk::VertexId cur,
                                    dynwalk::VertexId next) {
    const auto slice = g.neighbors(cur);
    for (std::uint32_t i = 0; i < slice.size(); ++i)
        if (slice[i].target == next) return i;
    throw dynwalk::Error("neighbor_index: vertex not adjacent");
}

// Scripted RNG for deterministic kernel tests; same bit mappings as
// CountingRng.
class FixedRng {
public:
    explicit FixedRng(std::vector<std::uint64_t> values) : values_(std::move(values)) {}

    std::uint64_t next_u64() {
        ++draws_;
        if (at_ >= values_.size()) throw dynwalk::Error("FixedRng exhausted");
        return values_[at_++];
    }
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double open01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }
    std::uint64_t draw_count() const { return draws_; }

    // the u64 whose uniform01() mapping lands on x in [0,1)
    static std::uint64_t from_unit(double x) {
        return static_cast<std::uint64_t>(x * 0x1.0p53) << 11;
    }
    // the u64 whose bounded(n) result is k
    static std::uint64_t from_bounded(std::uint64_t k, std::uint64_t n) {
        return (k * (~std::uint64_t{0} / n)) + (~std::uint64_t{0} / n) / 2;
    }

private:
    std::vector<std::uint64_t> values_;
    std::size_t at_ = 0;
    std::uint64_t draws_ = 0;
};

} // namespace dwt
