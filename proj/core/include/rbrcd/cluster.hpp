#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rbrcd/factor_matrix.hpp"
#include "rbrcd/rng.hpp"

namespace rbrcd {

/// Hard community assignment. Labels are compact: every label is < k0 and
/// every id in 0..k0-1 is used by at least one node.
struct Partition {
    std::vector<std::int32_t> labels;
    std::int32_t k0 = 0;
};

/// Relabel arbitrary integer labels to compact 0..k0-1, ascending by
/// original label value.
Partition compact_labels(std::span<const std::int32_t> raw);

/// Direct rounding: label(i) = argmax_j (u_i)_j, ties to the lowest column.
/// Unused columns are compacted out of the label range.
Partition recover_rounding(const FactorMatrix& U);

/// Lloyd's algorithm over the rows of U with k-means++ seeding, best of
/// `restarts` runs. When `weights` is non-empty (the degree vector), squared
/// residuals are scaled by weights[i]^2, i.e. k-means on D-scaled residuals.
/// Degenerate (empty) clusters are re-seeded from the farthest point; clusters
/// still empty at the end are compacted out. If `objective_trace` is given it
/// collects the per-iteration objective of every run (non-increasing within a
/// run; runs are concatenated).
Partition recover_kmeans(const FactorMatrix& U, int k, std::span<const double> weights,
                         Rng& rng, int restarts = 5,
                         std::vector<double>* objective_trace = nullptr);

/// The (weighted) k-means objective of a given assignment, with centroids
/// chosen optimally for that assignment. Exposed for objective-monotonicity
/// checks and oracle comparisons.
double kmeans_cost(const FactorMatrix& U, const Partition& part,
                   std::span<const double> weights);

} // namespace rbrcd
