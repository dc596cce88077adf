#include "rbrcd/factor_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace rbrcd {

FactorMatrix::FactorMatrix(NodeId n, int k, int p) : n_(n), k_(k), p_(p) {
    if (n < 1 || k < 1 || p < 1 || p > k || k > n) {
        throw std::invalid_argument("FactorMatrix requires 1 <= p <= k <= n");
    }
    cols_.assign(static_cast<std::size_t>(n) * p, 0);
    vals_.assign(static_cast<std::size_t>(n) * p, 0.0);
    len_.assign(static_cast<std::size_t>(n), 0);
    dtu_.assign(static_cast<std::size_t>(k), 0.0);
}

void FactorMatrix::set_row(NodeId i, std::span<const std::int32_t> cols,
                           std::span<const double> vals) {
    if (cols.size() != vals.size() || cols.size() > static_cast<std::size_t>(p_)) {
        throw std::invalid_argument("bad row payload");
    }
    const std::size_t off = offset(i);
    std::copy(cols.begin(), cols.end(), cols_.begin() + off);
    std::copy(vals.begin(), vals.end(), vals_.begin() + off);
    len_[i] = static_cast<std::int32_t>(cols.size());
}

void FactorMatrix::densify_row(NodeId i, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    const std::size_t off = offset(i);
    for (int t = 0; t < len_[i]; ++t) out[cols_[off + t]] = vals_[off + t];
}

void FactorMatrix::accumulate_dtu(const Graph& g, std::vector<double>& out) const {
    out.assign(static_cast<std::size_t>(k_), 0.0);
    for (NodeId i = 0; i < n_; ++i) {
        const double di = static_cast<double>(g.degree(i));
        if (di == 0.0) continue;
        const std::size_t off = offset(i);
        for (int t = 0; t < len_[i]; ++t) out[cols_[off + t]] += di * vals_[off + t];
    }
}

void FactorMatrix::recompute_dtu(const Graph& g) {
    accumulate_dtu(g, dtu_);
}

double FactorMatrix::dtu_drift(const Graph& g) const {
    std::vector<double> exact;
    accumulate_dtu(g, exact);
    double drift = 0.0;
    for (int j = 0; j < k_; ++j) drift = std::max(drift, std::abs(exact[j] - dtu_[j]));
    return drift;
}

double FactorMatrix::max_row_norm_error() const {
    double worst = 0.0;
    for (NodeId i = 0; i < n_; ++i) {
        double nrm2 = 0.0;
        const std::size_t off = offset(i);
        for (int t = 0; t < len_[i]; ++t) nrm2 += vals_[off + t] * vals_[off + t];
        worst = std::max(worst, std::abs(1.0 - std::sqrt(nrm2)));
    }
    return worst;
}

FactorMatrix FactorMatrix::random_init(NodeId n, int k, int p, Rng& rng, bool single_support) {
    FactorMatrix U(n, k, p);
    std::vector<std::int32_t> perm(static_cast<std::size_t>(k));
    std::vector<std::int32_t> cols;
    std::vector<double> vals;
    for (NodeId i = 0; i < n; ++i) {
        if (single_support) {
            const std::int32_t j = static_cast<std::int32_t>(rng.uniform_below(k));
            const double one = 1.0;
            U.set_row(i, {&j, 1}, {&one, 1});
            continue;
        }
        // Partial Fisher-Yates for the support, then positive magnitudes.
        for (int j = 0; j < k; ++j) perm[j] = j;
        const int s = std::min(p, k);
        for (int t = 0; t < s; ++t) {
            const int r = t + static_cast<int>(rng.uniform_below(k - t));
            std::swap(perm[t], perm[r]);
        }
        cols.assign(perm.begin(), perm.begin() + s);
        std::sort(cols.begin(), cols.end());
        vals.resize(s);
        double nrm2 = 0.0;
        for (int t = 0; t < s; ++t) {
            vals[t] = rng.uniform01_pos();
            nrm2 += vals[t] * vals[t];
        }
        const double inv = 1.0 / std::sqrt(nrm2);
        for (double& v : vals) v *= inv;
        U.set_row(i, cols, vals);
    }
    return U;
}

} // namespace rbrcd
