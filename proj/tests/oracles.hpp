#pragma once

// Test-only reference implementations. Everything here goes through dense
// matrices or exhaustive enumeration and stays independent of the library's
// sparse/implicit code paths it is used to check.

#include <cstdint>
#include <span>
#include <vector>

#include "rbrcd/factor_matrix.hpp"
#include "rbrcd/graph.hpp"
#include "rbrcd/rng.hpp"

namespace oracle {

using rbrcd::Graph;
using rbrcd::NodeId;

// Dense C = -(A - lambda d d^T), diagonal included (A_ii = 0).
std::vector<std::vector<double>> dense_c(const Graph& g);

// Dense adjacency, 0/1.
std::vector<std::vector<int>> dense_adjacency(const Graph& g);

// b = 2 C^i_{-i} U_{-i} - sigma u_i, computed with C materialized.
std::vector<double> dense_b(const Graph& g, const rbrcd::FactorMatrix& U, NodeId i,
                            double sigma);

// <C, U U^T> with C materialized.
double dense_objective(const Graph& g, const rbrcd::FactorMatrix& U);

// Exhaustive optimum of min b.x over the unit sphere cap intersected with
// ||x||_0 <= p: enumerate every support S, |S| <= p; per support the optimum
// is -||(b_S)^-|| if b_S has a negative entry and min_{j in S} b_j otherwise.
double subproblem_opt(std::span<const double> b, int p);

// Modularity by the O(n^2) textbook double sum.
double dense_modularity(const Graph& g, std::span<const std::int32_t> labels);

// Cluster coefficient by brute-force neighbor-pair enumeration, O(n^3).
double cc_brute(const Graph& g, std::span<const std::int32_t> labels);

// Strength score from the dense adjacency.
double strength_brute(const Graph& g, std::span<const std::int32_t> labels);

// Literal evaluation of err = 1 - sum_i max_j |C_i cap C*_j| / n over
// explicit member sets.
double greedy_err_literal(std::span<const std::int32_t> truth, std::int32_t k_true,
                          std::span<const std::int32_t> found, std::int32_t k_found);

// Best modularity over every assignment of n nodes to at most k labels.
double brute_force_best_modularity(const Graph& g, int k);

// Unweighted k-means cost of the best split of points into two groups,
// by exhaustive enumeration.
double best_two_cluster_cost(const std::vector<std::vector<double>>& points);

// Erdos-Renyi-ish random test graph; guaranteed at least one edge.
Graph random_graph(NodeId n, double edge_prob, rbrcd::Rng& rng);

} // namespace oracle
