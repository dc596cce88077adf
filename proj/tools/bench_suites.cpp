#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "rbrcd/metrics.hpp"
#include "rbrcd/solver.hpp"
#include "rbrcd/synth.hpp"

namespace rbrcd::cli {

namespace {

struct TrialOutcome {
    double err;
    double seconds;
};

TrialOutcome one_trial(const SynthConfig& scfg, SolverConfig cfg) {
    auto [g, truth] = generate_dcsbm(scfg);
    cfg.k = scfg.k;
    const auto t0 = std::chrono::steady_clock::now();
    DetectResult res = detect(g, cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const Partition tp = compact_labels(truth.labels);
    return {misclassification(tp, res.partition).err, secs};
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

// Tables: four (m, k) settings at fixed q, one row per setting with the
// mean greedy misclassification and mean detect time over `trials` draws.
int run_table_suite(const BenchOpts& opts, double alpha) {
    const int trials = opts.trials > 0 ? opts.trials : 20;
    const std::vector<std::pair<int, int>> settings{{200, 2}, {450, 2}, {200, 3}, {200, 4}};

    auto out = open_csv(opts.out_csv);
    out << "m,k,q,alpha,trials,err_mean,time_mean_s\n";
    for (std::size_t c = 0; c < settings.size(); ++c) {
        const auto [m, k] = settings[c];
        double err_sum = 0.0;
        double time_sum = 0.0;
        for (int d = 0; d < trials; ++d) {
            SynthConfig scfg;
            scfg.k = k;
            scfg.m = m;
            scfg.q = 0.1;
            scfg.alpha = alpha;
            scfg.seed = opts.seed + 1000 * c + d;

            SolverConfig cfg;
            cfg.restarts = 10;
            cfg.threads = opts.threads;
            cfg.seed = opts.seed + 500000 + 1000 * c + d;

            const auto r = one_trial(scfg, cfg);
            err_sum += r.err;
            time_sum += r.seconds;
        }
        out << m << ',' << k << ",0.1," << alpha << ',' << trials << ','
            << err_sum / trials << ',' << time_sum / trials << '\n';
        std::fprintf(stderr, "table m=%d k=%d: err=%.4f%%\n", m, k, 100.0 * err_sum / trials);
    }
    return 0;
}

// Misclassification against the Pareto shape parameter, one curve per q.
int run_shape_sweep(const BenchOpts& opts) {
    const int trials = opts.trials > 0 ? opts.trials : 10;
    auto out = open_csv(opts.out_csv);
    out << "q,alpha,trials,err_mean\n";
    int c = 0;
    for (double q : {0.05, 0.1, 0.15, 0.2}) {
        for (int a = 0; a < 9; ++a) {
            const double alpha = 1.1 + 0.1 * a;
            double err_sum = 0.0;
            for (int d = 0; d < trials; ++d) {
                SynthConfig scfg;
                scfg.k = 2;
                scfg.m = 200;
                scfg.q = q;
                scfg.alpha = alpha;
                scfg.seed = opts.seed + 1000 * c + d;

                SolverConfig cfg;
                cfg.restarts = 10;
                cfg.threads = opts.threads;
                cfg.seed = opts.seed + 500000 + 1000 * c + d;
                err_sum += one_trial(scfg, cfg).err;
            }
            out << q << ',' << alpha << ',' << trials << ',' << err_sum / trials << '\n';
            std::fprintf(stderr, "shape q=%.2f alpha=%.1f: err=%.4f%%\n", q, alpha,
                         100.0 * err_sum / trials);
            ++c;
        }
    }
    return 0;
}

// Fixed synthetic instance for the k- and p-sweeps (n = 5000).
Graph sweep_graph(std::uint64_t seed) {
    SynthConfig scfg;
    scfg.k = 10;
    scfg.m = 500;
    scfg.q = 0.02;
    scfg.alpha = 1.5;
    scfg.seed = seed;
    return generate_dcsbm(scfg).first;
}

int run_k_sweep(const BenchOpts& opts) {
    Graph g = sweep_graph(opts.seed);
    auto out = open_csv(opts.out_csv);
    out << "k,p,cc,s,q,time_s\n";
    for (int k : {5, 10, 20, 30, 50, 100, 200}) {
        SolverConfig cfg;
        cfg.k = k;
        cfg.p = std::min(5, k);
        cfg.restarts = opts.trials > 0 ? opts.trials : 3;
        cfg.max_sweeps = 30;
        cfg.threads = opts.threads;
        cfg.seed = opts.seed + 77;
        const auto t0 = std::chrono::steady_clock::now();
        DetectResult res = detect(g, cfg);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out << k << ',' << cfg.p << ',' << res.report.cluster_coefficient << ','
            << res.report.strength << ',' << res.report.modularity << ',' << secs << '\n';
        std::fprintf(stderr, "k-sweep k=%d: Q=%.4f CC=%.4f S=%.4f\n", k, res.report.modularity,
                     res.report.cluster_coefficient, res.report.strength);
    }
    return 0;
}

int run_p_sweep(const BenchOpts& opts) {
    Graph g = sweep_graph(opts.seed);
    auto out = open_csv(opts.out_csv);
    out << "p,k,cc,s,q,time_s\n";
    for (int p : {1, 2, 5, 10, 20}) {
        SolverConfig cfg;
        cfg.k = 100;
        cfg.p = p;
        cfg.restarts = opts.trials > 0 ? opts.trials : 3;
        cfg.max_sweeps = 30;
        cfg.threads = opts.threads;
        cfg.seed = opts.seed + 77;
        const auto t0 = std::chrono::steady_clock::now();
        DetectResult res = detect(g, cfg);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out << p << ',' << cfg.k << ',' << res.report.cluster_coefficient << ','
            << res.report.strength << ',' << res.report.modularity << ',' << secs << '\n';
        std::fprintf(stderr, "p-sweep p=%d: Q=%.4f CC=%.4f S=%.4f\n", p, res.report.modularity,
                     res.report.cluster_coefficient, res.report.strength);
    }
    return 0;
}

} // namespace

int run_bench(const BenchOpts& opts) {
    if (opts.suite == "table2") return run_table_suite(opts, 1.4);
    if (opts.suite == "table3") return run_table_suite(opts, 1.8);
    if (opts.suite == "shape-sweep") return run_shape_sweep(opts);
    if (opts.suite == "k-sweep") return run_k_sweep(opts);
    if (opts.suite == "p-sweep") return run_p_sweep(opts);
    throw std::invalid_argument("unknown suite: " + opts.suite);
}

} // namespace rbrcd::cli
