#include <benchmark/benchmark.h>

#include <vector>

#include "rbrcd/rng.hpp"
#include "rbrcd/solver.hpp"
#include "rbrcd/synth.hpp"

namespace {

using namespace rbrcd;

const Graph& bench_graph(int m) {
    static std::vector<std::pair<int, Graph>> cache;
    for (auto& [key, g] : cache) {
        if (key == m) return g;
    }
    SynthConfig cfg;
    cfg.k = 5;
    cfg.m = m;
    cfg.q = 0.05;
    cfg.alpha = 1.5;
    cfg.seed = 1;
    cache.emplace_back(m, generate_dcsbm(cfg).first);
    return cache.back().second;
}

void BM_subproblem(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Rng rng(7);
    std::vector<double> b(k);
    std::vector<std::int32_t> cols(k);
    std::vector<double> vals(k);
    for (auto _ : state) {
        for (double& x : b) x = (rng.uniform01() - 0.5) * 2.0;
        const int len = subproblem_solve(b, std::min(5, k), cols, vals);
        benchmark::DoNotOptimize(len);
        benchmark::DoNotOptimize(vals.data());
    }
}
BENCHMARK(BM_subproblem)->Arg(4)->Arg(16)->Arg(64)->Arg(256);

void BM_sweep_sequential(benchmark::State& state) {
    const Graph& g = bench_graph(static_cast<int>(state.range(0)));
    Rng rng(3);
    FactorMatrix U = FactorMatrix::random_init(g.num_nodes(), 20, 5, rng);
    U.recompute_dtu(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rbr_sweep_sequential(g, U, 0.01));
    }
    state.SetItemsProcessed(state.iterations() * g.num_nodes());
}
BENCHMARK(BM_sweep_sequential)->Arg(200)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_sweep_async(benchmark::State& state) {
    const Graph& g = bench_graph(1000);
    const int threads = static_cast<int>(state.range(0));
    Rng rng(3);
    FactorMatrix U0 = FactorMatrix::random_init(g.num_nodes(), 20, 5, rng);
    U0.recompute_dtu(g);
    SolverConfig cfg;
    cfg.k = 20;
    cfg.p = 5;
    cfg.max_sweeps = 10;
    cfg.tol = 0.0;
    cfg.threads = threads;
    for (auto _ : state) {
        FactorMatrix U = U0;
        rbr_run_async(g, U, cfg);
        benchmark::DoNotOptimize(U.dtu().data());
    }
    state.SetItemsProcessed(state.iterations() * g.num_nodes() * cfg.max_sweeps);
}
BENCHMARK(BM_sweep_async)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_objective(benchmark::State& state) {
    const Graph& g = bench_graph(1000);
    Rng rng(5);
    FactorMatrix U = FactorMatrix::random_init(g.num_nodes(), 20, 5, rng);
    U.recompute_dtu(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(objective_value(g, U));
    }
}
BENCHMARK(BM_objective)->Unit(benchmark::kMillisecond);

} // namespace
