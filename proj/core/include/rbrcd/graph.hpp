#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rbrcd {

using NodeId = std::int32_t;

/// Undirected simple graph in CSR form. Adjacency is the symmetric 0/1 matrix
/// A with empty diagonal; the degree vector d, total degree ||d||_1 = 2|E| and
/// the scale lambda = 1/||d||_1 are fixed at construction. Immutable afterwards,
/// so concurrent reads need no synchronization.
class Graph {
public:
    /// Build from an undirected edge list over original (possibly sparse)
    /// node ids. Self-loops are dropped. Duplicate edges are collapsed when
    /// `dedup` is set and rejected otherwise. Throws if no edge survives
    /// (lambda would be undefined).
    static Graph from_edges(std::span<const std::pair<std::int64_t, std::int64_t>> edges,
                            bool dedup = true);

    /// Same, but keeps every id in [0, n) as a node even if it ends up
    /// isolated. Original ids are the dense ids themselves.
    static Graph from_edges_with_n(NodeId n,
                                   std::span<const std::pair<NodeId, NodeId>> edges,
                                   bool dedup = true);

    NodeId num_nodes() const { return n_; }
    std::int64_t num_edges() const { return total_degree_ / 2; }

    std::span<const NodeId> neighbors(NodeId i) const {
        return {col_idx_.data() + row_ptr_[i], col_idx_.data() + row_ptr_[i + 1]};
    }
    NodeId degree(NodeId i) const { return static_cast<NodeId>(row_ptr_[i + 1] - row_ptr_[i]); }

    const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
    const std::vector<NodeId>& col_idx() const { return col_idx_; }

    double total_degree() const { return static_cast<double>(total_degree_); }
    double lambda() const { return lambda_; }

    /// Dense id -> id used in the input file.
    std::int64_t original_id(NodeId i) const { return original_ids_[i]; }
    const std::vector<std::int64_t>& original_ids() const { return original_ids_; }
    /// Inverse mapping; throws if the id was not present in the input.
    NodeId dense_id(std::int64_t original) const;

private:
    Graph() = default;

    NodeId n_ = 0;
    std::vector<std::int64_t> row_ptr_;
    std::vector<NodeId> col_idx_;
    std::int64_t total_degree_ = 0;
    double lambda_ = 0.0;
    std::vector<std::int64_t> original_ids_;
};

/// Parse a SNAP-style edge list: one "u v" pair per line, whitespace
/// separated, '#' starts a comment line. Node ids are remapped to dense
/// 0..n-1 (ascending original id); the mapping is kept on the graph.
/// Lines with anything other than two integers are rejected with the line
/// number; a third column (weights) is rejected, the adjacency is binary.
Graph load_edge_list(const std::string& path, bool dedup = true);

/// Write the graph back as an edge list using original ids, one undirected
/// edge per line. load(save(g)) reproduces the CSR structure exactly.
void save_edge_list(const Graph& g, const std::string& path);

} // namespace rbrcd
