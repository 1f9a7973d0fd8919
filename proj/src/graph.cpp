#include "dynwalk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dynwalk/rng.hpp"

namespace dynwalk {

Graph Graph::build(std::vector<EdgeRecord> edges, bool has_labels, bool mirror,
                   std::uint64_t num_vertices_hint) {
    if (mirror) {
        const std::size_t n = edges.size();
        edges.reserve(n * 2);
        for (std::size_t i = 0; i < n; ++i) {
            const EdgeRecord& e = edges[i];
            if (e.src != e.dst)
                edges.push_back(EdgeRecord{e.dst, e.src, e.prop, e.label});
        }
    }

    std::uint64_t nv = num_vertices_hint;
    for (const EdgeRecord& e : edges) {
        nv = std::max<std::uint64_t>(nv, std::uint64_t(e.src) + 1);
        nv = std::max<std::uint64_t>(nv, std::uint64_t(e.dst) + 1);
    }
    if (nv >= kInvalidVertex)
        throw Error("vertex id overflow: graph needs " + std::to_string(nv) + " vertices");

    Graph g;
    g.has_labels_ = has_labels;
    g.row_offsets_.assign(nv + 1, 0);
    for (const EdgeRecord& e : edges)
        ++g.row_offsets_[e.src + 1];
    for (std::uint64_t v = 0; v < nv; ++v)
        g.row_offsets_[v + 1] += g.row_offsets_[v];

    const std::uint64_t ne = edges.size();
    g.col_indices_.resize(ne);
    g.edge_props_.resize(ne);
    if (has_labels) g.edge_labels_.resize(ne);

    std::vector<EdgeIndex> cursor(g.row_offsets_.begin(), g.row_offsets_.end() - 1);
    for (const EdgeRecord& e : edges) {
        const EdgeIndex at = cursor[e.src]++;
        g.col_indices_[at] = e.dst;
        g.edge_props_[at] = e.prop;
        if (has_labels) g.edge_labels_[at] = e.label;
    }

    // Sort each slice by target id so membership tests can binary-search.
    for (std::uint64_t v = 0; v < nv; ++v) {
        const EdgeIndex lo = g.row_offsets_[v], hi = g.row_offsets_[v + 1];
        const std::size_t d = static_cast<std::size_t>(hi - lo);
        if (d < 2) continue;
        std::vector<std::size_t> order(d);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return g.col_indices_[lo + a] < g.col_indices_[lo + b];
        });
        std::vector<VertexId> ct(d);
        std::vector<float> pt(d);
        std::vector<Label> lt(has_labels ? d : 0);
        for (std::size_t i = 0; i < d; ++i) {
            ct[i] = g.col_indices_[lo + order[i]];
            pt[i] = g.edge_props_[lo + order[i]];
            if (has_labels) lt[i] = g.edge_labels_[lo + order[i]];
        }
        std::copy(ct.begin(), ct.end(), g.col_indices_.begin() + lo);
        std::copy(pt.begin(), pt.end(), g.edge_props_.begin() + lo);
        if (has_labels) std::copy(lt.begin(), lt.end(), g.edge_labels_.begin() + lo);
    }

    g.recompute_aggregates();
    return g;
}

void Graph::recompute_aggregates() {
    const std::uint32_t nv = num_vertices();
    node_prop_max_.assign(nv, 0.0);
    node_prop_sum_.assign(nv, 0.0);
    for (std::uint32_t v = 0; v < nv; ++v) {
        double mx = 0.0, sum = 0.0;
        // ascending edge order; the sum is bit-reproducible
        for (EdgeIndex e = row_offsets_[v]; e != row_offsets_[v + 1]; ++e) {
            const double p = edge_props_[e];
            if (p > mx) mx = p;
            sum += p;
        }
        node_prop_max_[v] = mx;
        node_prop_sum_[v] = sum;
    }
}

void Graph::set_edge_props(std::vector<float> props) {
    if (props.size() != col_indices_.size())
        throw Error("edge property array length mismatch");
    edge_props_ = std::move(props);
    recompute_aggregates();
}

void Graph::set_edge_labels(std::vector<Label> labels) {
    if (labels.size() != col_indices_.size())
        throw Error("edge label array length mismatch");
    edge_labels_ = std::move(labels);
    has_labels_ = true;
}

bool Graph::has_edge(VertexId v, VertexId u) const {
    const EdgeIndex lo = row_offsets_[v], hi = row_offsets_[v + 1];
    return std::binary_search(col_indices_.begin() + static_cast<std::ptrdiff_t>(lo),
                              col_indices_.begin() + static_cast<std::ptrdiff_t>(hi), u);
}

namespace {

void validate_prop(double p, std::size_t line_no) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw Error("line " + std::to_string(line_no) +
                    ": edge property must be strictly positive and finite, got " +
                    std::to_string(p));
}

VertexId parse_vertex(const std::string& tok, std::size_t line_no) {
    std::uint64_t id = 0;
    std::size_t pos = 0;
    try {
        id = std::stoull(tok, &pos);
    } catch (const std::exception&) {
        throw Error("line " + std::to_string(line_no) + ": malformed vertex id '" + tok + "'");
    }
    if (pos != tok.size())
        throw Error("line " + std::to_string(line_no) + ": malformed vertex id '" + tok + "'");
    if (id >= kInvalidVertex)
        throw Error("line " + std::to_string(line_no) + ": vertex id " + tok + " overflows");
    return static_cast<VertexId>(id);
}

} // namespace

Graph load_edge_list(const std::string& path, bool directed) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open edge list file: " + path);

    std::vector<EdgeRecord> edges;
    bool any_labels = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string t1, t2, t3, t4, extra;
        if (!(ls >> t1)) continue; // blank or comment-only line
        if (!(ls >> t2))
            throw Error("line " + std::to_string(line_no) + ": expected 'src dst [prop] [label]'");
        EdgeRecord rec;
        rec.src = parse_vertex(t1, line_no);
        rec.dst = parse_vertex(t2, line_no);
        if (ls >> t3) {
            double p = 0.0;
            std::size_t pos = 0;
            try {
                p = std::stod(t3, &pos);
            } catch (const std::exception&) {
                throw Error("line " + std::to_string(line_no) + ": malformed property '" + t3 + "'");
            }
            if (pos != t3.size())
                throw Error("line " + std::to_string(line_no) + ": malformed property '" + t3 + "'");
            validate_prop(p, line_no);
            rec.prop = static_cast<float>(p);
            validate_prop(rec.prop, line_no); // still positive after narrowing
        }
        if (ls >> t4) {
            std::uint64_t lab = 0;
            std::size_t pos = 0;
            try {
                lab = std::stoull(t4, &pos);
            } catch (const std::exception&) {
                throw Error("line " + std::to_string(line_no) + ": malformed label '" + t4 + "'");
            }
            if (pos != t4.size() || lab > std::numeric_limits<Label>::max())
                throw Error("line " + std::to_string(line_no) + ": malformed label '" + t4 + "'");
            rec.label = static_cast<Label>(lab);
            any_labels = true;
        }
        if (ls >> extra)
            throw Error("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
        edges.push_back(rec);
    }
    return Graph::build(std::move(edges), any_labels, !directed);
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    out.precision(std::numeric_limits<float>::max_digits10); // float round-trip exact
    const bool labels = g.has_labels();
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const NeighborSlice slice = g.neighbors(v);
        for (std::size_t i = 0; i < slice.size(); ++i) {
            const NeighborRef n = slice[i];
            out << v << ' ' << n.target << ' ' << n.prop;
            if (labels) out << ' ' << n.label;
            out << '\n';
        }
    }
    if (!out) throw Error("write failed: " + path);
}

namespace {

constexpr char kMagic[4] = {'D', 'W', 'G', '1'};
constexpr std::uint32_t kBinaryVersion = 1;

template <typename T>
void write_array(std::ofstream& out, const std::vector<T>& v) {
    const std::uint64_t n = v.size();
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(n * sizeof(T)));
}

template <typename T>
std::vector<T> read_array(std::ifstream& in, const std::string& path) {
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    std::vector<T> v(n);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
    if (!in) throw Error("truncated binary graph file: " + path);
    return v;
}

} // namespace

void save_binary(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out.write(kMagic, sizeof(kMagic));
    out.write(reinterpret_cast<const char*>(&kBinaryVersion), sizeof(kBinaryVersion));
    const std::uint8_t labels = g.has_labels() ? 1 : 0;
    out.write(reinterpret_cast<const char*>(&labels), sizeof(labels));
    write_array(out, std::vector<EdgeIndex>(g.row_offsets().begin(), g.row_offsets().end()));
    write_array(out, std::vector<VertexId>(g.col_indices().begin(), g.col_indices().end()));
    write_array(out, std::vector<float>(g.edge_props().begin(), g.edge_props().end()));
    if (labels)
        write_array(out, std::vector<Label>(g.edge_labels().begin(), g.edge_labels().end()));
    if (!out) throw Error("write failed: " + path);
}

Graph load_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open graph file: " + path);
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw Error("not a binary graph file: " + path);
    std::uint32_t version = 0;
    in.read(reinterpret_cast<char*>(&version), sizeof(version));
    if (version != kBinaryVersion)
        throw Error("unsupported binary graph version " + std::to_string(version));
    std::uint8_t labels = 0;
    in.read(reinterpret_cast<char*>(&labels), sizeof(labels));

    auto offsets = read_array<EdgeIndex>(in, path);
    auto targets = read_array<VertexId>(in, path);
    auto props = read_array<float>(in, path);
    if (offsets.empty() || offsets.front() != 0 || offsets.back() != targets.size())
        throw Error("corrupt binary graph file: " + path);

    // Reassemble through build() so every invariant is re-established.
    std::vector<EdgeRecord> edges(targets.size());
    std::vector<Label> labs;
    if (labels) labs = read_array<Label>(in, path);
    std::size_t at = 0;
    for (std::size_t v = 0; v + 1 < offsets.size(); ++v) {
        for (EdgeIndex e = offsets[v]; e != offsets[v + 1]; ++e, ++at) {
            edges[at].src = static_cast<VertexId>(v);
            edges[at].dst = targets[e];
            edges[at].prop = props[e];
            if (labels) edges[at].label = labs[e];
        }
    }
    return Graph::build(std::move(edges), labels != 0, /*mirror=*/false,
                        offsets.size() - 1);
}

bool is_binary_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char magic[4];
    in.read(magic, sizeof(magic));
    return in && std::memcmp(magic, kMagic, sizeof(kMagic)) == 0;
}

Graph synthesize_weights(Graph g, const WeightGenSpec& spec) {
    using Kind = WeightGenSpec::Kind;
    CountingRng rng(derive_seed(spec.seed, 0x77656967687473ULL));
    const std::uint64_t ne = g.num_edges();

    switch (spec.kind) {
    case Kind::UniformReal: {
        if (!(spec.low < spec.high))
            throw Error("uniform weight spec requires low < high");
        if (!(spec.low > 0.0))
            throw Error("uniform weight spec requires low > 0");
        std::vector<float> props(ne);
        for (std::uint64_t e = 0; e < ne; ++e)
            props[e] = static_cast<float>(spec.low + rng.uniform01() * (spec.high - spec.low));
        g.set_edge_props(std::move(props));
        break;
    }
    case Kind::UniformIntLabel: {
        if (!(spec.low <= spec.high) || spec.low < 0 ||
            spec.high > std::numeric_limits<Label>::max())
            throw Error("label spec requires 0 <= low <= high <= 65535");
        const std::uint64_t lo = static_cast<std::uint64_t>(spec.low);
        const std::uint64_t span = static_cast<std::uint64_t>(spec.high) - lo + 1;
        std::vector<Label> labels(ne);
        for (std::uint64_t e = 0; e < ne; ++e)
            labels[e] = static_cast<Label>(lo + rng.bounded(span));
        g.set_edge_labels(std::move(labels));
        break;
    }
    case Kind::Pareto: {
        if (!(spec.alpha > 0.0))
            throw Error("pareto weight spec requires alpha > 0");
        // standard Pareto transform u^(-1/alpha), support [1, inf)
        std::vector<float> props(ne);
        const double inv_alpha = 1.0 / spec.alpha;
        for (std::uint64_t e = 0; e < ne; ++e)
            props[e] = static_cast<float>(std::pow(rng.open01(), -inv_alpha));
        g.set_edge_props(std::move(props));
        break;
    }
    case Kind::DegreeBased: {
        std::vector<float> props(ne);
        for (std::uint64_t e = 0; e < ne; ++e)
            props[e] = static_cast<float>(
                std::max<std::uint32_t>(1, g.degree(g.edge_target(e))));
        g.set_edge_props(std::move(props));
        break;
    }
    }
    return g;
}

} // namespace dynwalk
