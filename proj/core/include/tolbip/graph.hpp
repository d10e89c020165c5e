#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tolbip {

/*
 * Simple undirected graph on vertices 0..n-1, no self-loops, stored as a
 * bit-packed adjacency matrix (row-major, 64-bit words). Built for the
 * dense-model workloads here: O(1) edge probes and word-parallel
 * neighborhood/side intersection counts.
 */
class DenseGraph {
public:
    explicit DenseGraph(uint32_t n);

    static DenseGraph from_edges(uint32_t n,
                                 const std::vector<std::pair<uint32_t, uint32_t>>& edges);

    // Inserts {u,v}; returns false if the edge was already present.
    // Throws std::invalid_argument on u == v, std::out_of_range on range.
    bool add_edge(uint32_t u, uint32_t v);

    bool has_edge(uint32_t u, uint32_t v) const;

    uint32_t n() const { return n_; }
    uint64_t edge_count() const { return m_; }
    uint32_t degree(uint32_t v) const;

    size_t words_per_row() const { return stride_; }
    const uint64_t* row(uint32_t v) const { return bits_.data() + static_cast<size_t>(v) * stride_; }

    // Number of neighbors of v inside the vertex set encoded by `mask`
    // (words_per_row() words, bit w = vertex w).
    uint64_t neighbors_in(uint32_t v, const uint64_t* mask) const;

    // Subgraph induced by `verts` (distinct, in range); vertex i of the
    // result is verts[i].
    DenseGraph induced(const std::vector<uint32_t>& verts) const;

    bool operator==(const DenseGraph& o) const {
        return n_ == o.n_ && bits_ == o.bits_;
    }

private:
    void check_pair(uint32_t u, uint32_t v) const;
    uint32_t n_;
    size_t stride_;
    uint64_t m_ = 0;
    std::vector<uint64_t> bits_;
};

/*
 * Text format:
 *   n <vertex count>
 *   u v            (one edge per line)
 * Blank lines and '#' comments (full-line or trailing) are ignored.
 * The parser rejects self-loops, duplicate edges, out-of-range endpoints,
 * and malformed tokens, reporting the offending line.
 */
DenseGraph parse_graph_text(std::istream& in);
DenseGraph load_graph_file(const std::string& path);
void write_graph_text(const DenseGraph& g, std::ostream& out);
void save_graph_file(const DenseGraph& g, const std::string& path);

} // namespace tolbip
