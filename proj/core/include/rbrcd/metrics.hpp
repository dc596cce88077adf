#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rbrcd/cluster.hpp"
#include "rbrcd/graph.hpp"

namespace rbrcd {

struct MetricsReport {
    double modularity = 0.0;          // Q, in [-1/2, 1]
    double cluster_coefficient = 0.0; // CC, in [0, 1]
    double strength = 0.0;            // S, in [0, 1]
    std::int32_t k0 = 0;
    double wall_time_s = 0.0;
    std::optional<double> err;        // greedy misclassification, needs ground truth
    std::optional<double> err_exact;  // permutation-minimal, only for small k
    std::vector<std::vector<std::int64_t>> confusion; // k_true x k0, empty without truth
};

struct Misclassification {
    double err = 0.0;                 // 1 - sum_i max_j |C_i cap C*_j| / n
    std::optional<double> err_exact;  // 1 - best injective matching / n, if max(k) <= 8
    std::vector<std::vector<std::int64_t>> confusion; // confusion[t][f] = |C*_t cap C_f|
};

/// Newman modularity of the partition: Q = sum_c [ e_c/|E| - (D_c/(2|E|))^2 ]
/// with e_c the intra-community edge count and D_c the community degree sum.
double modularity(const Graph& g, const Partition& part);

/// Mean within-community cluster coefficient: per node, the fraction of
/// neighbor pairs inside its own community that are themselves connected,
/// averaged per community and then over communities. Nodes with degree <= 1
/// contribute 0 but count toward their community size.
double cluster_coefficient(const Graph& g, const Partition& part);

/// Strong/weak/invalid trichotomy per community (score 1 / 0.5 / 0), averaged:
/// strong when every member has more intra- than inter-community neighbors,
/// weak when that holds in community total.
double strength(const Graph& g, const Partition& part);

/// Greedy misclassification rate of `found` against `truth`, plus the exact
/// permutation-minimal rate whenever max(k_true, k0) <= 8. The greedy rate can
/// undercount errors because several detected communities may claim the same
/// true community.
Misclassification misclassification(const Partition& truth, const Partition& found);

/// Q, CC, S and k0 in one pass (no ground truth).
MetricsReport evaluate(const Graph& g, const Partition& part);

} // namespace rbrcd
