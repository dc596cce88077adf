#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "rbrcd/metrics.hpp"
#include "rbrcd/solver.hpp"
#include "rbrcd/synth.hpp"

namespace rbrcd::cli {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

Recovery parse_recovery(const std::string& name) {
    if (name == "rounding") return Recovery::Rounding;
    if (name == "kmeans") return Recovery::KMeans;
    if (name == "wkmeans") return Recovery::WeightedKMeans;
    throw std::invalid_argument("unknown recovery scheme: " + name);
}

json metrics_json(const MetricsReport& r) {
    json j{{"modularity", r.modularity},
           {"cluster_coefficient", r.cluster_coefficient},
           {"strength", r.strength},
           {"k0", r.k0},
           {"wall_time_s", r.wall_time_s}};
    if (r.err) j["err"] = *r.err;
    if (r.err_exact) j["err_exact"] = *r.err_exact;
    if (!r.confusion.empty()) j["confusion"] = r.confusion;
    return j;
}

void write_json(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

} // namespace

void save_labels(const std::string& path, const Graph& g, const Partition& part) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        out << g.original_id(i) << ' ' << part.labels[i] << '\n';
    }
    if (!out) throw std::runtime_error("I/O error while writing " + path);
}

Partition load_labels(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open labels file: " + path);
    std::vector<std::int32_t> raw(static_cast<std::size_t>(g.num_nodes()));
    std::vector<bool> seen(static_cast<std::size_t>(g.num_nodes()), false);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::int64_t id;
        std::int64_t label;
        if (std::sscanf(line.c_str(), "%ld %ld", &id, &label) != 2) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected \"node_id label\"");
        }
        const NodeId dense = g.dense_id(id); // throws on unknown id
        if (seen[dense]) {
            throw std::runtime_error(path + ": duplicate label for node " + std::to_string(id));
        }
        seen[dense] = true;
        raw[dense] = static_cast<std::int32_t>(label);
    }
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        if (!seen[i]) {
            throw std::runtime_error(path + ": no label for node " +
                                     std::to_string(g.original_id(i)));
        }
    }
    return compact_labels(raw);
}

int run_detect(const DetectOpts& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    Graph g = load_edge_list(opts.graph_path, opts.dedup);
    const double load_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    SolverConfig cfg;
    cfg.k = opts.k;
    cfg.p = opts.p > 0 ? opts.p
                       : (g.num_nodes() > 100000 ? std::min(5, opts.k) : opts.k);
    cfg.sigma = opts.sigma;
    cfg.max_sweeps = opts.sweeps;
    cfg.restarts = opts.restarts;
    cfg.threads = opts.threads;
    cfg.rounding_every = opts.rounding_every >= 0 ? opts.rounding_every
                                                  : (opts.threads > 1 ? 5 : 0);
    cfg.tol = opts.tol;
    cfg.seed = opts.seed;
    cfg.recovery = parse_recovery(opts.recover);

    ProgressFn progress;
    if (opts.verbose) {
        progress = [](const SweepInfo& info) {
            std::fprintf(stderr, "sweep %3d  f=%.6f  delta_sq=%.3e  drift=%.3e\n", info.sweep,
                         info.objective, info.delta_sq, info.dtu_drift);
        };
    }

    DetectResult res = detect(g, cfg, progress);
    for (std::size_t r = 0; r < res.restarts.size(); ++r) {
        const auto& rs = res.restarts[r];
        std::fprintf(stderr, "restart %2zu: sweeps=%d f=%.6f Q=%.6f (%.3fs)%s\n", r, rs.sweeps,
                     rs.objective, rs.modularity_q, rs.seconds,
                     static_cast<int>(r) == res.best_restart ? "  <- best" : "");
    }

    if (!opts.labels_path.empty()) save_labels(opts.labels_path, g, res.partition);

    const double total_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!opts.out_path.empty()) {
        json restarts = json::array();
        for (std::size_t r = 0; r < res.restarts.size(); ++r) {
            const auto& rs = res.restarts[r];
            restarts.push_back({{"restart", r},
                                {"stream", rs.stream},
                                {"sweeps", rs.sweeps},
                                {"objective", rs.objective},
                                {"modularity", rs.modularity_q},
                                {"seconds", rs.seconds}});
        }
        json j{{"schema_version", kSchemaVersion},
               {"command", "detect"},
               {"config",
                {{"graph", opts.graph_path},
                 {"k", cfg.k},
                 {"p", cfg.p},
                 {"sigma", cfg.sigma},
                 {"sweeps", cfg.max_sweeps},
                 {"restarts", cfg.restarts},
                 {"threads", cfg.threads},
                 {"rounding_every", cfg.rounding_every},
                 {"tol", cfg.effective_tol(g.num_nodes())},
                 {"recover", opts.recover},
                 {"seed", cfg.seed},
                 {"dedup", opts.dedup}}},
               {"graph", {{"nodes", g.num_nodes()}, {"edges", g.num_edges()}}},
               {"restarts", restarts},
               {"best_restart", res.best_restart},
               {"metrics", metrics_json(res.report)},
               {"labels_file", opts.labels_path.empty() ? json() : json(opts.labels_path)},
               {"timing", {{"load_s", load_s}, {"solve_s", res.report.wall_time_s},
                           {"total_s", total_s}}}};
        write_json(j, opts.out_path);
    }

    std::printf("Q=%.6f k0=%d time=%.3fs\n", res.report.modularity, res.report.k0, total_s);
    return 0;
}

int run_synth(const SynthOpts& opts) {
    SynthConfig cfg;
    cfg.k = opts.k;
    cfg.m = opts.m;
    cfg.q = opts.q;
    cfg.ratio = opts.ratio;
    cfg.alpha = opts.alpha;
    cfg.seed = opts.seed;
    cfg.degree_corrected = !opts.sbm;

    auto [g, truth] = generate_dcsbm(cfg);
    save_edge_list(g, opts.out_prefix + ".edges");

    std::ofstream out(opts.out_prefix + ".truth");
    if (!out) throw std::runtime_error("cannot open for writing: " + opts.out_prefix + ".truth");
    for (NodeId i = 0; i < g.num_nodes(); ++i) out << i << ' ' << truth.labels[i] << '\n';

    std::printf("n=%d edges=%lld -> %s.edges, %s.truth\n", g.num_nodes(),
                static_cast<long long>(g.num_edges()), opts.out_prefix.c_str(),
                opts.out_prefix.c_str());
    return 0;
}

int run_eval(const EvalOpts& opts) {
    Graph g = load_edge_list(opts.graph_path, opts.dedup);
    Partition found = load_labels(opts.labels_path, g);

    const auto t0 = std::chrono::steady_clock::now();
    MetricsReport report = evaluate(g, found);
    if (!opts.truth_path.empty()) {
        Partition truth = load_labels(opts.truth_path, g);
        auto mc = misclassification(truth, found);
        report.err = mc.err;
        report.err_exact = mc.err_exact;
        report.confusion = std::move(mc.confusion);
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json j{{"schema_version", kSchemaVersion},
           {"command", "eval"},
           {"graph", {{"nodes", g.num_nodes()}, {"edges", g.num_edges()}}},
           {"metrics", metrics_json(report)}};
    write_json(j, opts.out_path);
    return 0;
}

} // namespace rbrcd::cli
