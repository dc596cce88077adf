#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace rbrcd::cli;

int main(int argc, char** argv) {
    CLI::App app{"Community detection by sparse low-rank factorization of the "
                 "modularity objective, solved row by row."};
    app.require_subcommand(1);

    DetectOpts dopts;
    auto* detect = app.add_subcommand("detect", "Detect communities in an edge-list graph");
    detect->add_option("--graph", dopts.graph_path, "edge-list file (\"u v\" lines, # comments)")
        ->required()
        ->check(CLI::ExistingFile);
    detect->add_option("--k", dopts.k, "number of communities (columns of the factor)")
        ->required()
        ->check(CLI::PositiveNumber);
    detect->add_option("--p", dopts.p,
                       "row sparsity cap; default: k up to 1e5 nodes, min(5,k) beyond");
    detect->add_option("--sigma", dopts.sigma, "proximal parameter (default 0.01)")
        ->check(CLI::NonNegativeNumber);
    detect->add_option("--sweeps", dopts.sweeps, "max full passes (default 100)");
    detect->add_option("--restarts", dopts.restarts, "random restarts, best modularity wins "
                                                     "(default 10)");
    detect->add_option("--threads", dopts.threads, "workers for the lock-free solver "
                                                   "(default 1 = deterministic)");
    detect->add_option("--rounding-every", dopts.rounding_every,
                       "round all rows every N sweeps (0 = off; default 5 when "
                       "--threads > 1, else off)");
    detect->add_option("--tol", dopts.tol, "sequential stop when delta_sq < tol "
                                           "(default 1e-8 * n)");
    detect->add_option("--recover", dopts.recover, "recovery scheme (default rounding)")
        ->check(CLI::IsMember({"rounding", "kmeans", "wkmeans"}));
    detect->add_option("--seed", dopts.seed, "RNG seed (default 0)");
    detect->add_flag("!--no-dedup", dopts.dedup, "fail on duplicate edges instead of collapsing");
    detect->add_flag("--verbose", dopts.verbose, "log per-sweep objective to stderr");
    detect->add_option("--out", dopts.out_path, "write a JSON run record here");
    detect->add_option("--labels-out", dopts.labels_path,
                       "write \"node_id label\" lines (original ids)");

    SynthOpts sopts;
    auto* synth = app.add_subcommand("synth", "Generate a DCSBM benchmark graph with ground truth");
    synth->add_option("--k", sopts.k, "communities")->check(CLI::Range(2, 1 << 20));
    synth->add_option("--m", sopts.m, "nodes per community")->check(CLI::PositiveNumber);
    synth->add_option("--q", sopts.q, "intra-community edge probability")
        ->check(CLI::Range(0.0, 1.0));
    synth->add_option("--ratio", sopts.ratio, "inter/intra probability ratio (default 0.3)");
    synth->add_option("--alpha", sopts.alpha, "Pareto shape, must be > 1")
        ->check(CLI::Validator(
            [](std::string& s) {
                return std::stod(s) > 1.0 ? std::string()
                                          : std::string("alpha must be > 1 (scale undefined)");
            },
            "FLOAT>1"));
    synth->add_flag("--sbm", sopts.sbm, "plain SBM: heterogeneity fixed to 1");
    synth->add_option("--seed", sopts.seed, "RNG seed (default 0)");
    synth->add_option("--out", sopts.out_prefix, "output prefix for .edges and .truth files")
        ->required();

    EvalOpts eopts;
    auto* eval = app.add_subcommand("eval", "Score a labeling: Q, CC, S and, with truth, err");
    eval->add_option("--graph", eopts.graph_path, "edge-list file")
        ->required()
        ->check(CLI::ExistingFile);
    eval->add_option("--labels", eopts.labels_path, "labels file (\"node_id label\" lines)")
        ->required()
        ->check(CLI::ExistingFile);
    eval->add_option("--truth", eopts.truth_path, "ground-truth labels file")
        ->check(CLI::ExistingFile);
    eval->add_flag("!--no-dedup", eopts.dedup, "fail on duplicate edges instead of collapsing");
    eval->add_option("--out", eopts.out_path, "write the JSON report here (default stdout)");

    BenchOpts bopts;
    auto* bench = app.add_subcommand("bench", "Run a synthetic benchmark suite to CSV");
    bench->add_option("--suite", bopts.suite, "table2 | table3 | shape-sweep | k-sweep | p-sweep")
        ->required()
        ->check(CLI::IsMember({"table2", "table3", "shape-sweep", "k-sweep", "p-sweep"}));
    bench->add_option("--trials", bopts.trials, "draws per configuration (0 = suite default)");
    bench->add_option("--seed", bopts.seed, "base RNG seed");
    bench->add_option("--threads", bopts.threads, "solver threads");
    bench->add_option("--out", bopts.out_csv, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (detect->parsed()) return run_detect(dopts);
        if (synth->parsed()) return run_synth(sopts);
        if (eval->parsed()) return run_eval(eopts);
        if (bench->parsed()) return run_bench(bopts);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
