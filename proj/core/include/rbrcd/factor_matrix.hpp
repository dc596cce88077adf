#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rbrcd/graph.hpp"
#include "rbrcd/rng.hpp"

namespace rbrcd {

/// Row-sparse nonnegative factor U in R^{n x k}: row i holds at most p
/// (column, value) pairs with strictly positive values and unit l2 norm.
/// Rows live in a fixed-stride arena (stride p), so concurrent workers can
/// address disjoint rows without any shared allocation state. The dense
/// accumulator dtu = d^T U = sum_i d_i u_i is maintained incrementally by the
/// solver and can be refreshed from scratch at any time.
class FactorMatrix {
public:
    FactorMatrix(NodeId n, int k, int p);

    NodeId rows() const { return n_; }
    int rank() const { return k_; }
    int sparsity() const { return p_; }

    int row_len(NodeId i) const { return len_[i]; }
    std::span<const std::int32_t> row_cols(NodeId i) const {
        return {cols_.data() + offset(i), static_cast<std::size_t>(len_[i])};
    }
    std::span<const double> row_vals(NodeId i) const {
        return {vals_.data() + offset(i), static_cast<std::size_t>(len_[i])};
    }

    /// Replace row i; entries must be column-sorted, positive, at most p.
    /// Does not touch dtu.
    void set_row(NodeId i, std::span<const std::int32_t> cols, std::span<const double> vals);

    /// Scatter row i into a dense length-k buffer (buffer is zeroed first).
    void densify_row(NodeId i, std::span<double> out) const;

    std::span<const double> dtu() const { return dtu_; }

    /// Recompute dtu = sum_i d_i u_i exactly from the rows.
    void recompute_dtu(const Graph& g);
    /// Inf-norm gap between the stored accumulator and an exact recompute.
    double dtu_drift(const Graph& g) const;

    /// Largest |1 - ||u_i||_2| over all rows; feasible U keeps this ~1e-16.
    double max_row_norm_error() const;

    /// Random feasible start: each row gets min(p, k) distinct support
    /// columns chosen uniformly and iid positive magnitudes, normalized.
    /// With single_support, each row is a random unit coordinate vector
    /// instead. dtu is left zeroed; callers pair this with recompute_dtu.
    static FactorMatrix random_init(NodeId n, int k, int p, Rng& rng,
                                    bool single_support = false);

    // Raw arena access for the solver's lock-free path. Row i occupies
    // [i*p, i*p + len[i]) in cols/vals.
    std::size_t offset(NodeId i) const { return static_cast<std::size_t>(i) * p_; }
    std::int32_t* cols_data() { return cols_.data(); }
    double* vals_data() { return vals_.data(); }
    std::int32_t* len_data() { return len_.data(); }
    double* dtu_data() { return dtu_.data(); }
    const std::int32_t* cols_data() const { return cols_.data(); }
    const double* vals_data() const { return vals_.data(); }
    const std::int32_t* len_data() const { return len_.data(); }

private:
    void accumulate_dtu(const Graph& g, std::vector<double>& out) const;

    NodeId n_;
    int k_;
    int p_;
    std::vector<std::int32_t> cols_;
    std::vector<double> vals_;
    std::vector<std::int32_t> len_;
    std::vector<double> dtu_;
};

} // namespace rbrcd
