#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dynwalk/types.hpp"

namespace dynwalk {

// One edge as read from / written to an edge-list file.
struct EdgeRecord {
    VertexId src = 0;
    VertexId dst = 0;
    float prop = 1.0f;
    Label label = 0;
};

struct NeighborRef {
    VertexId target;
    float prop;
    Label label;
};

class Graph;

// Contiguous view over one vertex's out-edges.
class NeighborSlice {
public:
    NeighborSlice(const Graph& g, EdgeIndex begin, EdgeIndex end)
        : g_(&g), begin_(begin), end_(end) {}

    std::size_t size() const { return static_cast<std::size_t>(end_ - begin_); }
    bool empty() const { return begin_ == end_; }
    NeighborRef operator[](std::size_t i) const;
    EdgeIndex edge_begin() const { return begin_; }
    EdgeIndex edge_end() const { return end_; }

private:
    const Graph* g_;
    EdgeIndex begin_;
    EdgeIndex end_;
};

// CSR graph with per-edge property weights and optional integer labels.
// Immutable after construction and safe for concurrent reads.
//
// Invariants kept by construction:
//  - each adjacency slice is sorted by target id (O(log d) membership tests);
//  - all properties are strictly positive and finite;
//  - node_prop_max/node_prop_sum are the exact max/sum of each slice's
//    properties, accumulated in double in ascending edge order, so they are
//    bit-reproducible and checkable by recomputation.
class Graph {
public:
    Graph() : row_offsets_(1, 0) {}

    // Builds the CSR form. num_vertices is max referenced id + 1 unless a
    // larger hint is given. mirror=true adds a reverse twin for every
    // non-self-loop edge.
    static Graph build(std::vector<EdgeRecord> edges, bool has_labels,
                       bool mirror, std::uint64_t num_vertices_hint = 0);

    std::uint32_t num_vertices() const {
        return static_cast<std::uint32_t>(row_offsets_.size() - 1);
    }
    std::uint64_t num_edges() const { return col_indices_.size(); }
    bool has_labels() const { return has_labels_; }

    std::uint32_t degree(VertexId v) const {
        check_vertex(v);
        return static_cast<std::uint32_t>(row_offsets_[v + 1] - row_offsets_[v]);
    }

    EdgeIndex out_edge_begin(VertexId v) const {
        check_vertex(v);
        return row_offsets_[v];
    }

    NeighborSlice neighbors(VertexId v) const {
        check_vertex(v);
        return NeighborSlice(*this, row_offsets_[v], row_offsets_[v + 1]);
    }

    VertexId edge_target(EdgeIndex e) const { return col_indices_[e]; }
    float edge_prop(EdgeIndex e) const { return edge_props_[e]; }
    Label edge_label(EdgeIndex e) const {
        return has_labels_ ? edge_labels_[e] : Label{0};
    }

    double node_prop_max(VertexId v) const { return node_prop_max_[v]; }
    double node_prop_sum(VertexId v) const { return node_prop_sum_[v]; }

    // Membership test u in N(v) by binary search over the sorted slice.
    bool has_edge(VertexId v, VertexId u) const;

    std::span<const EdgeIndex> row_offsets() const { return row_offsets_; }
    std::span<const VertexId> col_indices() const { return col_indices_; }
    std::span<const float> edge_props() const { return edge_props_; }
    std::span<const Label> edge_labels() const { return edge_labels_; }

    // Recomputes the per-node aggregates; called after any property rewrite.
    void recompute_aggregates();

    // Replaces all edge properties (same length). Used by weight synthesis.
    void set_edge_props(std::vector<float> props);
    void set_edge_labels(std::vector<Label> labels);

private:
    friend class NeighborSlice;

    void check_vertex(VertexId v) const {
        if (v >= num_vertices())
            throw Error("vertex id " + std::to_string(v) + " out of range (num_vertices=" +
                        std::to_string(num_vertices()) + ")");
    }

    std::vector<EdgeIndex> row_offsets_;
    std::vector<VertexId> col_indices_;
    std::vector<float> edge_props_;
    std::vector<Label> edge_labels_;
    std::vector<double> node_prop_max_;
    std::vector<double> node_prop_sum_;
    bool has_labels_ = false;
};

inline NeighborRef NeighborSlice::operator[](std::size_t i) const {
    const EdgeIndex e = begin_ + i;
    return NeighborRef{g_->edge_target(e), g_->edge_prop(e), g_->edge_label(e)};
}

// Weight / label synthesis over an existing topology.
struct WeightGenSpec {
    enum class Kind { UniformReal, UniformIntLabel, Pareto, DegreeBased };

    Kind kind = Kind::UniformReal;
    double low = 1.0;   // uniform-real low / uniform-int-label low
    double high = 5.0;  // uniform-real high (exclusive) / uniform-int-label high (inclusive)
    double alpha = 1.0; // pareto shape
    std::uint64_t seed = 0;
};

// Text edge-list format: lines "src dst [prop] [label]", '#' comments.
Graph load_edge_list(const std::string& path, bool directed);
void write_edge_list(const Graph& g, const std::string& path);

// Binary CSR cache (magic + version + little-endian arrays).
void save_binary(const Graph& g, const std::string& path);
Graph load_binary(const std::string& path);
bool is_binary_graph_file(const std::string& path);

// Deterministic in (topology, spec): identical seeds give bit-identical
// properties. UniformIntLabel rewrites labels; the other kinds rewrite
// properties and recompute the per-node aggregates.
Graph synthesize_weights(Graph g, const WeightGenSpec& spec);

} // namespace dynwalk
