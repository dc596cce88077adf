#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rbrcd/graph.hpp"
#include "rbrcd/rng.hpp"

namespace rbrcd {

/// Planted-partition model: k communities of m nodes each (n = m*k), block
/// probabilities B_aa = q and B_ab = ratio*q, per-node heterogeneity theta
/// drawn Pareto(alpha, beta) with beta = (alpha-1)/alpha so E[theta] = 1.
/// With degree_corrected = false, theta == 1 (plain SBM).
struct SynthConfig {
    int k = 2;
    int m = 200;
    double q = 0.1;
    double ratio = 0.3;
    double alpha = 1.4;
    std::uint64_t seed = 0;
    bool degree_corrected = true;

    int num_nodes() const { return k * m; }
    void validate() const;
};

struct GroundTruth {
    std::vector<std::int32_t> labels; // true community per node, 0..k-1
    std::vector<double> theta;        // heterogeneity, >= beta > 0
};

/// iid Pareto(alpha, beta) draws with beta = (alpha-1)/alpha, via inverse CDF
/// theta = beta * u^(-1/alpha), u uniform on (0, 1]. Requires alpha > 1.
std::vector<double> sample_pareto_theta(double alpha, std::size_t count, Rng& rng);

/// Sample the graph: every unordered pair (i, j), i < j, with true labels a, b
/// is an edge independently with probability min(1, theta_i theta_j B_ab).
/// Deterministic in (cfg, cfg.seed). Throws (via Graph) when no edge at all
/// is drawn, since lambda is undefined on an empty graph.
std::pair<Graph, GroundTruth> generate_dcsbm(const SynthConfig& cfg);

} // namespace rbrcd
