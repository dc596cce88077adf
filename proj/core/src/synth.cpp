#include "rbrcd/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace rbrcd {

void SynthConfig::validate() const {
    if (k < 2) throw std::invalid_argument("synth: need k >= 2");
    if (m < 1) throw std::invalid_argument("synth: need m >= 1");
    // q = 0 is allowed through; the resulting empty graph is rejected where
    // lambda gets defined.
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("synth: need q in [0, 1]");
    if (!(ratio > 0.0 && ratio <= 1.0)) throw std::invalid_argument("synth: need ratio in (0, 1]");
    if (!(alpha > 1.0)) {
        throw std::invalid_argument("synth: need alpha > 1 so that E[theta] = 1 is attainable");
    }
}

std::vector<double> sample_pareto_theta(double alpha, std::size_t count, Rng& rng) {
    if (!(alpha > 1.0)) throw std::invalid_argument("pareto: need alpha > 1");
    const double beta = (alpha - 1.0) / alpha; // E[theta] = alpha*beta/(alpha-1) = 1
    std::vector<double> theta(count);
    for (double& t : theta) t = beta * std::pow(rng.uniform01_pos(), -1.0 / alpha);
    return theta;
}

std::pair<Graph, GroundTruth> generate_dcsbm(const SynthConfig& cfg) {
    cfg.validate();
    const NodeId n = static_cast<NodeId>(cfg.num_nodes());
    Rng rng(cfg.seed);

    GroundTruth truth;
    truth.labels.resize(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) truth.labels[i] = i / cfg.m;
    truth.theta = cfg.degree_corrected
                      ? sample_pareto_theta(cfg.alpha, static_cast<std::size_t>(n), rng)
                      : std::vector<double>(static_cast<std::size_t>(n), 1.0);

    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < n; ++i) {
        const std::int32_t a = truth.labels[i];
        for (NodeId j = i + 1; j < n; ++j) {
            const double block = truth.labels[j] == a ? cfg.q : cfg.ratio * cfg.q;
            const double prob = std::min(1.0, truth.theta[i] * truth.theta[j] * block);
            if (rng.bernoulli(prob)) edges.emplace_back(i, j);
        }
    }
    return {Graph::from_edges_with_n(n, edges), std::move(truth)};
}

} // namespace rbrcd
