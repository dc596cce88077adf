#include "rbrcd/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace rbrcd {

namespace {

// Shared CSR construction over dense ids. `edges` may contain self-loops
// (dropped here) and duplicates (collapsed or rejected per `dedup`).
struct CsrParts {
    std::vector<std::int64_t> row_ptr;
    std::vector<NodeId> col_idx;
    std::int64_t total_degree;
};

CsrParts build_csr(NodeId n, std::vector<std::pair<NodeId, NodeId>>& edges, bool dedup) {
    // Symmetrize: store both directions, drop the diagonal.
    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u == v) continue;
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    auto last = std::unique(arcs.begin(), arcs.end());
    if (!dedup && last != arcs.end()) {
        throw std::runtime_error("duplicate edges present and dedup is disabled");
    }
    arcs.erase(last, arcs.end());
    if (arcs.empty()) {
        throw std::runtime_error("graph has no edges; lambda = 1/||d||_1 is undefined");
    }

    CsrParts out;
    out.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : arcs) out.row_ptr[static_cast<std::size_t>(u) + 1]++;
    for (NodeId i = 0; i < n; ++i) out.row_ptr[i + 1] += out.row_ptr[i];
    out.col_idx.reserve(arcs.size());
    for (auto [u, v] : arcs) out.col_idx.push_back(v); // arcs sorted -> rows sorted
    out.total_degree = static_cast<std::int64_t>(arcs.size());
    return out;
}

} // namespace

Graph Graph::from_edges(std::span<const std::pair<std::int64_t, std::int64_t>> edges, bool dedup) {
    // Remap original ids to dense 0..n-1, ascending. Every id that appears in
    // the file is a node, even when all of its edges turn out to be
    // self-loops (it is kept, isolated, with degree 0).
    std::vector<std::int64_t> ids;
    ids.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        ids.push_back(u);
        ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::unordered_map<std::int64_t, NodeId> to_dense;
    to_dense.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) to_dense.emplace(ids[i], static_cast<NodeId>(i));

    std::vector<std::pair<NodeId, NodeId>> dense_edges;
    dense_edges.reserve(edges.size());
    for (auto [u, v] : edges) dense_edges.emplace_back(to_dense.at(u), to_dense.at(v));

    Graph g;
    g.n_ = static_cast<NodeId>(ids.size());
    g.original_ids_ = std::move(ids);
    auto csr = build_csr(g.n_, dense_edges, dedup);
    g.row_ptr_ = std::move(csr.row_ptr);
    g.col_idx_ = std::move(csr.col_idx);
    g.total_degree_ = csr.total_degree;
    g.lambda_ = 1.0 / static_cast<double>(g.total_degree_);
    return g;
}

Graph Graph::from_edges_with_n(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges,
                               bool dedup) {
    std::vector<std::pair<NodeId, NodeId>> dense_edges(edges.begin(), edges.end());
    for (auto [u, v] : dense_edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    }
    Graph g;
    g.n_ = n;
    g.original_ids_.resize(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) g.original_ids_[i] = i;
    auto csr = build_csr(n, dense_edges, dedup);
    g.row_ptr_ = std::move(csr.row_ptr);
    g.col_idx_ = std::move(csr.col_idx);
    g.total_degree_ = csr.total_degree;
    g.lambda_ = 1.0 / static_cast<double>(g.total_degree_);
    return g;
}

NodeId Graph::dense_id(std::int64_t original) const {
    auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), original);
    if (it == original_ids_.end() || *it != original) {
        throw std::out_of_range("node id not present in graph: " + std::to_string(original));
    }
    return static_cast<NodeId>(it - original_ids_.begin());
}

Graph load_edge_list(const std::string& path, bool dedup) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);

    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const char* s = line.data();
        const char* end = s + line.size();
        while (s < end && std::isspace(static_cast<unsigned char>(*s))) ++s;
        if (s == end || *s == '#') continue;

        std::int64_t vals[2];
        int nvals = 0;
        while (s < end && nvals < 2) {
            auto [ptr, ec] = std::from_chars(s, end, vals[nvals]);
            if (ec != std::errc{}) break;
            ++nvals;
            s = ptr;
            while (s < end && std::isspace(static_cast<unsigned char>(*s))) ++s;
        }
        if (nvals != 2 || s != end) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected exactly two integer node ids");
        }
        edges.emplace_back(vals[0], vals[1]);
    }
    if (in.bad()) throw std::runtime_error("I/O error while reading " + path);
    return Graph::from_edges(edges, dedup);
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        // A bare edge list cannot name an isolated node, so emit it as a
        // self-loop; the loader drops the loop and keeps the node.
        if (g.degree(i) == 0) {
            out << g.original_id(i) << ' ' << g.original_id(i) << '\n';
            continue;
        }
        for (NodeId j : g.neighbors(i)) {
            if (i < j) out << g.original_id(i) << ' ' << g.original_id(j) << '\n';
        }
    }
    if (!out) throw std::runtime_error("I/O error while writing " + path);
}

} // namespace rbrcd
