#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rbrcd/cluster.hpp"
#include "rbrcd/graph.hpp"

namespace rbrcd::cli {

struct DetectOpts {
    std::string graph_path;
    int k = 0;
    int p = 0; // 0 = auto: k for graphs up to 1e5 nodes, min(5, k) beyond
    double sigma = 0.01;
    int sweeps = 100;
    int restarts = 10;
    int threads = 1;
    int rounding_every = -1; // auto: 5 for parallel runs, off sequentially
    double tol = -1.0;
    std::uint64_t seed = 0;
    std::string recover = "rounding";
    bool dedup = true;
    bool verbose = false;
    std::string out_path;    // JSON report
    std::string labels_path; // "node_id label" per line, original ids
};

struct SynthOpts {
    int k = 2;
    int m = 200;
    double q = 0.1;
    double ratio = 0.3;
    double alpha = 1.4;
    bool sbm = false;
    std::uint64_t seed = 0;
    std::string out_prefix; // writes <prefix>.edges and <prefix>.truth
};

struct EvalOpts {
    std::string graph_path;
    std::string labels_path;
    std::string truth_path; // optional
    bool dedup = true;
    std::string out_path;   // JSON, stdout if empty
};

struct BenchOpts {
    std::string suite;
    int trials = 0; // 0 = suite default
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_csv;
};

int run_detect(const DetectOpts& opts);
int run_synth(const SynthOpts& opts);
int run_eval(const EvalOpts& opts);
int run_bench(const BenchOpts& opts);

// Shared label-file helpers ("node_id label" lines, '#' comments).
void save_labels(const std::string& path, const Graph& g, const Partition& part);
Partition load_labels(const std::string& path, const Graph& g);

} // namespace rbrcd::cli
