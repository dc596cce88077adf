#include "rbrcd/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rbrcd {

Partition compact_labels(std::span<const std::int32_t> raw) {
    std::vector<std::int32_t> used(raw.begin(), raw.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    Partition part;
    part.labels.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        part.labels[i] = static_cast<std::int32_t>(
            std::lower_bound(used.begin(), used.end(), raw[i]) - used.begin());
    }
    part.k0 = static_cast<std::int32_t>(used.size());
    return part;
}

Partition recover_rounding(const FactorMatrix& U) {
    std::vector<std::int32_t> raw(static_cast<std::size_t>(U.rows()));
    for (NodeId i = 0; i < U.rows(); ++i) {
        const auto cols = U.row_cols(i);
        const auto vals = U.row_vals(i);
        std::int32_t best_col = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < cols.size(); ++t) {
            // Strict > with column-sorted rows implements the lowest-index tie-break.
            if (vals[t] > best_val) {
                best_val = vals[t];
                best_col = cols[t];
            }
        }
        raw[i] = best_col;
    }
    return compact_labels(raw);
}

namespace {

struct DensePoints {
    std::vector<double> data; // n x k row-major
    NodeId n;
    int k;
    std::span<const double> point(NodeId i) const {
        return {data.data() + static_cast<std::size_t>(i) * k, static_cast<std::size_t>(k)};
    }
};

double sqdist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

struct LloydRun {
    std::vector<std::int32_t> assign;
    double cost;
};

LloydRun lloyd_once(const DensePoints& pts, int k, std::span<const double> cw, Rng& rng,
                    std::vector<double>* trace) {
    const NodeId n = pts.n;
    const int dim = pts.k;
    std::vector<double> centers(static_cast<std::size_t>(k) * dim, 0.0);
    auto center = [&](int c) {
        return std::span<double>(centers.data() + static_cast<std::size_t>(c) * dim,
                                 static_cast<std::size_t>(dim));
    };

    // k-means++ seeding, sampling mass = weight * squared distance.
    std::vector<double> mind(static_cast<std::size_t>(n),
                             std::numeric_limits<double>::infinity());
    auto sample_by_mass = [&](auto mass_of) -> NodeId {
        double total = 0.0;
        for (NodeId i = 0; i < n; ++i) total += mass_of(i);
        if (total <= 0.0) return static_cast<NodeId>(rng.uniform_below(n));
        double r = rng.uniform01() * total;
        for (NodeId i = 0; i < n; ++i) {
            r -= mass_of(i);
            if (r <= 0.0) return i;
        }
        return n - 1;
    };
    for (int c = 0; c < k; ++c) {
        NodeId pick;
        if (c == 0) {
            pick = sample_by_mass([&](NodeId i) { return cw[i]; });
        } else {
            pick = sample_by_mass([&](NodeId i) { return cw[i] * mind[i]; });
        }
        auto dst = center(c);
        auto src = pts.point(pick);
        std::copy(src.begin(), src.end(), dst.begin());
        for (NodeId i = 0; i < n; ++i) mind[i] = std::min(mind[i], sqdist(pts.point(i), dst));
    }

    std::vector<std::int32_t> assign(static_cast<std::size_t>(n), 0);
    std::vector<double> csum(static_cast<std::size_t>(k) * dim);
    std::vector<double> cmass(static_cast<std::size_t>(k));
    double cost = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
        // Assignment step; ties go to the lowest center index.
        cost = 0.0;
        for (NodeId i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::int32_t arg = 0;
            for (int c = 0; c < k; ++c) {
                const double d = sqdist(pts.point(i), center(c));
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            assign[i] = arg;
            cost += cw[i] * best;
        }
        if (trace) trace->push_back(cost);

        // Update step: weighted centroids.
        std::fill(csum.begin(), csum.end(), 0.0);
        std::fill(cmass.begin(), cmass.end(), 0.0);
        for (NodeId i = 0; i < n; ++i) {
            const auto x = pts.point(i);
            double* acc = csum.data() + static_cast<std::size_t>(assign[i]) * dim;
            for (int j = 0; j < dim; ++j) acc[j] += cw[i] * x[j];
            cmass[assign[i]] += cw[i];
        }
        double moved = 0.0;
        for (int c = 0; c < k; ++c) {
            auto dst = center(c);
            if (cmass[c] > 0.0) {
                double delta = 0.0;
                for (int j = 0; j < dim; ++j) {
                    const double nv = csum[static_cast<std::size_t>(c) * dim + j] / cmass[c];
                    const double d = nv - dst[j];
                    delta += d * d;
                    dst[j] = nv;
                }
                moved = std::max(moved, delta);
            } else {
                // Empty cluster: re-seed at the point farthest from its center.
                double worst = -1.0;
                NodeId far = 0;
                for (NodeId i = 0; i < n; ++i) {
                    const double d = cw[i] * sqdist(pts.point(i), center(assign[i]));
                    if (d > worst) {
                        worst = d;
                        far = i;
                    }
                }
                auto src = pts.point(far);
                std::copy(src.begin(), src.end(), dst.begin());
                moved = std::numeric_limits<double>::infinity();
            }
        }
        if (moved < 1e-8 * 1e-8) break; // movement measured as squared l2
    }

    // Final assignment against the last centers so cost matches labels.
    cost = 0.0;
    for (NodeId i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::int32_t arg = 0;
        for (int c = 0; c < k; ++c) {
            const double d = sqdist(pts.point(i), center(c));
            if (d < best) {
                best = d;
                arg = c;
            }
        }
        assign[i] = arg;
        cost += cw[i] * best;
    }
    if (trace) trace->push_back(cost);
    return {std::move(assign), cost};
}

} // namespace

Partition recover_kmeans(const FactorMatrix& U, int k, std::span<const double> weights,
                         Rng& rng, int restarts, std::vector<double>* objective_trace) {
    const NodeId n = U.rows();
    if (k < 1 || k > n) throw std::invalid_argument("recover_kmeans: need 1 <= k <= n");
    if (!weights.empty() && weights.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("recover_kmeans: weight vector length mismatch");
    }

    DensePoints pts;
    pts.n = n;
    pts.k = U.rank();
    pts.data.assign(static_cast<std::size_t>(n) * pts.k, 0.0);
    for (NodeId i = 0; i < n; ++i) {
        std::span<double> row(pts.data.data() + static_cast<std::size_t>(i) * pts.k,
                              static_cast<std::size_t>(pts.k));
        U.densify_row(i, row);
    }

    // Cost weight per point is weights[i]^2: ||D(Phi Xc - U)||_F^2.
    std::vector<double> cw(static_cast<std::size_t>(n), 1.0);
    if (!weights.empty()) {
        for (NodeId i = 0; i < n; ++i) {
            if (weights[i] < 0.0) throw std::invalid_argument("negative k-means weight");
            cw[i] = weights[i] * weights[i];
        }
    }

    LloydRun best{{}, std::numeric_limits<double>::infinity()};
    for (int r = 0; r < std::max(1, restarts); ++r) {
        LloydRun run = lloyd_once(pts, k, cw, rng, objective_trace);
        if (run.cost < best.cost) best = std::move(run);
    }
    return compact_labels(best.assign);
}

double kmeans_cost(const FactorMatrix& U, const Partition& part, std::span<const double> weights) {
    const NodeId n = U.rows();
    const int dim = U.rank();
    std::vector<double> cw(static_cast<std::size_t>(n), 1.0);
    if (!weights.empty()) {
        for (NodeId i = 0; i < n; ++i) cw[i] = weights[i] * weights[i];
    }
    std::vector<double> dense(static_cast<std::size_t>(n) * dim, 0.0);
    for (NodeId i = 0; i < n; ++i) {
        U.densify_row(i, {dense.data() + static_cast<std::size_t>(i) * dim,
                          static_cast<std::size_t>(dim)});
    }
    std::vector<double> csum(static_cast<std::size_t>(part.k0) * dim, 0.0);
    std::vector<double> cmass(static_cast<std::size_t>(part.k0), 0.0);
    for (NodeId i = 0; i < n; ++i) {
        const double* x = dense.data() + static_cast<std::size_t>(i) * dim;
        double* acc = csum.data() + static_cast<std::size_t>(part.labels[i]) * dim;
        for (int j = 0; j < dim; ++j) acc[j] += cw[i] * x[j];
        cmass[part.labels[i]] += cw[i];
    }
    double cost = 0.0;
    for (NodeId i = 0; i < n; ++i) {
        const double* x = dense.data() + static_cast<std::size_t>(i) * dim;
        const double* c = csum.data() + static_cast<std::size_t>(part.labels[i]) * dim;
        const double m = cmass[part.labels[i]];
        for (int j = 0; j < dim; ++j) {
            const double cj = m > 0.0 ? c[j] / m : 0.0;
            const double d = x[j] - cj;
            cost += cw[i] * d * d;
        }
    }
    return cost;
}

} // namespace rbrcd
