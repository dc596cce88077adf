#include "rbrcd/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace rbrcd {

namespace {

void check_labels(const Graph& g, const Partition& part) {
    if (part.labels.size() != static_cast<std::size_t>(g.num_nodes())) {
        throw std::invalid_argument("partition does not cover the graph's nodes");
    }
}

} // namespace

double modularity(const Graph& g, const Partition& part) {
    check_labels(g, part);
    const double m = static_cast<double>(g.num_edges());
    std::vector<double> intra(static_cast<std::size_t>(part.k0), 0.0);
    std::vector<double> deg_sum(static_cast<std::size_t>(part.k0), 0.0);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        const std::int32_t c = part.labels[i];
        deg_sum[c] += static_cast<double>(g.degree(i));
        for (NodeId j : g.neighbors(i)) {
            if (j > i && part.labels[j] == c) intra[c] += 1.0;
        }
    }
    double q = 0.0;
    for (std::int32_t c = 0; c < part.k0; ++c) {
        const double frac = deg_sum[c] / (2.0 * m);
        q += intra[c] / m - frac * frac;
    }
    assert(q >= -0.5 - 1e-9 && q <= 1.0 + 1e-9);
    return q;
}

double cluster_coefficient(const Graph& g, const Partition& part) {
    check_labels(g, part);
    const NodeId n = g.num_nodes();
    std::vector<std::int64_t> comm_size(static_cast<std::size_t>(part.k0), 0);
    std::vector<double> comm_acc(static_cast<std::size_t>(part.k0), 0.0);
    for (NodeId i = 0; i < n; ++i) comm_size[part.labels[i]]++;

    // mark[j] flags j as a neighbor of v inside v's community.
    std::vector<std::uint8_t> mark(static_cast<std::size_t>(n), 0);
    for (NodeId v = 0; v < n; ++v) {
        const double dv = static_cast<double>(g.degree(v));
        if (dv <= 1.0) continue; // no neighbor pair to close
        const std::int32_t c = part.labels[v];
        for (NodeId t : g.neighbors(v)) {
            if (part.labels[t] == c) mark[t] = 1;
        }
        std::int64_t closed = 0; // edges with both ends in N(v) and v's community
        for (NodeId t : g.neighbors(v)) {
            if (!mark[t]) continue;
            for (NodeId s : g.neighbors(t)) {
                if (s > t && mark[s]) ++closed;
            }
        }
        for (NodeId t : g.neighbors(v)) mark[t] = 0;
        comm_acc[c] += 2.0 * static_cast<double>(closed) / (dv * (dv - 1.0));
    }

    double cc = 0.0;
    std::int32_t nonempty = 0;
    for (std::int32_t c = 0; c < part.k0; ++c) {
        if (comm_size[c] == 0) continue;
        cc += comm_acc[c] / static_cast<double>(comm_size[c]);
        ++nonempty;
    }
    return nonempty > 0 ? cc / nonempty : 0.0;
}

double strength(const Graph& g, const Partition& part) {
    check_labels(g, part);
    const NodeId n = g.num_nodes();
    std::vector<std::uint8_t> all_members_strong(static_cast<std::size_t>(part.k0), 1);
    std::vector<std::int64_t> in_total(static_cast<std::size_t>(part.k0), 0);
    std::vector<std::int64_t> out_total(static_cast<std::size_t>(part.k0), 0);
    for (NodeId v = 0; v < n; ++v) {
        const std::int32_t c = part.labels[v];
        std::int64_t din = 0;
        std::int64_t dout = 0;
        for (NodeId j : g.neighbors(v)) {
            if (part.labels[j] == c) ++din; else ++dout;
        }
        if (din <= dout) all_members_strong[c] = 0;
        in_total[c] += din;
        out_total[c] += dout;
    }
    double s = 0.0;
    for (std::int32_t c = 0; c < part.k0; ++c) {
        if (all_members_strong[c]) s += 1.0;
        else if (in_total[c] > out_total[c]) s += 0.5;
    }
    return part.k0 > 0 ? s / part.k0 : 0.0;
}

Misclassification misclassification(const Partition& truth, const Partition& found) {
    if (truth.labels.size() != found.labels.size()) {
        throw std::invalid_argument("partitions cover different node sets");
    }
    const std::size_t n = truth.labels.size();
    const std::int32_t kt = truth.k0;
    const std::int32_t kf = found.k0;

    Misclassification out;
    out.confusion.assign(static_cast<std::size_t>(kt),
                         std::vector<std::int64_t>(static_cast<std::size_t>(kf), 0));
    for (std::size_t i = 0; i < n; ++i) out.confusion[truth.labels[i]][found.labels[i]]++;

    // Greedy: every detected community claims its best-overlapping true one.
    std::int64_t covered = 0;
    for (std::int32_t f = 0; f < kf; ++f) {
        std::int64_t best = 0;
        for (std::int32_t t = 0; t < kt; ++t) best = std::max(best, out.confusion[t][f]);
        covered += best;
    }
    out.err = 1.0 - static_cast<double>(covered) / static_cast<double>(n);

    // Exact: best injective matching of detected to true communities, by
    // enumeration over the padded square problem.
    const std::int32_t s = std::max(kt, kf);
    if (s <= 8) {
        std::vector<std::int32_t> perm(static_cast<std::size_t>(s));
        std::iota(perm.begin(), perm.end(), 0);
        std::int64_t best = 0;
        do {
            std::int64_t sum = 0;
            for (std::int32_t t = 0; t < s; ++t) {
                const std::int32_t f = perm[t];
                if (t < kt && f < kf) sum += out.confusion[t][f];
            }
            best = std::max(best, sum);
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.err_exact = 1.0 - static_cast<double>(best) / static_cast<double>(n);
    }
    return out;
}

MetricsReport evaluate(const Graph& g, const Partition& part) {
    MetricsReport r;
    r.modularity = modularity(g, part);
    r.cluster_coefficient = cluster_coefficient(g, part);
    r.strength = strength(g, part);
    r.k0 = part.k0;
    return r;
}

} // namespace rbrcd
