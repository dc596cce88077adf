#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rbrcd/cluster.hpp"
#include "rbrcd/factor_matrix.hpp"
#include "rbrcd/graph.hpp"
#include "rbrcd/metrics.hpp"

namespace rbrcd {

enum class Recovery { Rounding, KMeans, WeightedKMeans };
enum class InitMode { SpreadSupport, SingleSupport };

struct SolverConfig {
    int k = 2;                  // columns of U / target community count
    int p = 0;                  // row sparsity cap, 0 means p = k
    double sigma = 0.01;        // proximal parameter, > 0 for guaranteed descent
    int max_sweeps = 100;
    int restarts = 10;
    int rounding_every = 0;     // round all rows every that many sweeps, 0 = off
    int threads = 1;            // >1 switches detect() to the lock-free path
    std::uint64_t seed = 0;
    double tol = -1.0;          // sequential stop: delta_sq < tol (< 0 -> 1e-8 * n)
    InitMode init = InitMode::SpreadSupport;
    Recovery recovery = Recovery::Rounding;

    int effective_p() const { return p > 0 ? p : k; }
    double effective_tol(NodeId n) const { return tol >= 0.0 ? tol : 1e-8 * n; }
    void validate(NodeId n) const;
};

struct SweepInfo {
    int sweep = 0;            // 1-based sweep index
    double objective = 0.0;   // <C, U U^T>, recomputed exactly
    double delta_sq = 0.0;    // ||U^t - U^{t-1}||_F^2 of this sweep
    double dtu_drift = 0.0;   // accumulator drift observed before any refresh
};
using ProgressFn = std::function<void(const SweepInfo&)>;

/// Exact minimizer of b . x over { x on the unit sphere, x >= 0, ||x||_0 <= p }:
/// the p largest entries of the negative part of b, normalized, when b has a
/// negative entry; otherwise the coordinate vector at argmin_j b_j. Ties are
/// broken toward lower column indices. Writes the (column-sorted, positive)
/// row into out_cols/out_vals and returns the entry count.
int subproblem_solve(std::span<const double> b, int p,
                     std::span<std::int32_t> out_cols, std::span<double> out_vals);

/// Row-i subproblem gradient with C implicit:
///   b = -2 sum_{j in N(i)} u_j + 2 lambda d_i (dtu - d_i u_i) - sigma u_i.
/// Uses the stored accumulator; cost O(d_i p + k).
void compute_b(const Graph& g, const FactorMatrix& U, NodeId i, double sigma,
               std::span<double> out);

/// One full in-order pass over all rows, each updated through compute_b and
/// subproblem_solve with the accumulator maintained incrementally. Returns the
/// squared Frobenius change of the pass.
double rbr_sweep_sequential(const Graph& g, FactorMatrix& U, double sigma);

struct RunStats {
    int sweeps = 0;
    double final_delta_sq = 0.0;
};

/// Sweeps until max_sweeps or delta_sq < tol. Deterministic.
RunStats rbr_run_sequential(const Graph& g, FactorMatrix& U, const SolverConfig& cfg,
                            const ProgressFn& progress = {});

/// Lock-free parallel run: workers claim rows off an atomic cursor and update
/// them with no locks; row ownership is exclusive but reads of other rows and
/// of the accumulator may be stale or torn, which the method tolerates. The
/// accumulator is refreshed whenever its drift exceeds 1e-6 * ||d||_1 and at
/// every rounding event. Runs exactly max_sweeps sweeps (there is no reliable
/// convergence test in this mode). With threads = 1 this reproduces the
/// sequential sweep bit for bit.
RunStats rbr_run_async(const Graph& g, FactorMatrix& U, const SolverConfig& cfg,
                       const ProgressFn& progress = {});

/// Replace every row by the indicator of its largest entry (ties toward the
/// lower column) and recompute the accumulator from scratch.
void round_in_place(FactorMatrix& U, const Graph& g);

/// f(U) = <C, U U^T> evaluated without materializing C:
/// -2 sum_{(i,j) in E} <u_i, u_j> + lambda ||d^T U||^2, accumulator recomputed.
double objective_value(const Graph& g, const FactorMatrix& U);

struct RestartStat {
    std::uint64_t stream = 0;
    int sweeps = 0;
    double objective = 0.0;    // final f
    double modularity_q = 0.0; // Q of the recovered partition
    double seconds = 0.0;
};

struct DetectResult {
    Partition partition;
    MetricsReport report;
    std::vector<RestartStat> restarts;
    int best_restart = -1;
};

/// Full pipeline: `restarts` independent solves from random feasible starts,
/// each recovered to a partition by the configured scheme; the partition with
/// the highest modularity wins. Sequential mode is reproducible from
/// (config, seed) alone.
DetectResult detect(const Graph& g, const SolverConfig& cfg, const ProgressFn& progress = {});

} // namespace rbrcd
