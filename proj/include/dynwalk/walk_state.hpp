#pragma once

#include <cstdint>
#include <vector>

#include "dynwalk/graph.hpp"
#include "dynwalk/types.hpp"

namespace dynwalk {

// One query's walker. Owned by exactly one worker at a time.
// path[0] is the start node, path[step] == cur, prev == path[step-1].
struct WalkerState {
    std::uint64_t query_id = 0;
    VertexId cur = kInvalidVertex;
    VertexId prev = kInvalidVertex; // kInvalidVertex: no previous node yet
    std::uint32_t prev_degree = 0;
    std::uint32_t step = 0;
    std::vector<VertexId> path;

    bool has_prev() const { return prev != kInvalidVertex; }

    void reset(std::uint64_t qid, VertexId start) {
        query_id = qid;
        cur = start;
        prev = kInvalidVertex;
        prev_degree = 0;
        step = 0;
        path.clear();
        path.push_back(start);
    }

    void advance(const Graph& g, VertexId next) {
        prev = cur;
        prev_degree = g.degree(cur);
        cur = next;
        ++step;
        path.push_back(next);
    }
};

} // namespace dynwalk
