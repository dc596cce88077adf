#include <benchmark/benchmark.h>

#include "rbrcd/cluster.hpp"
#include "rbrcd/metrics.hpp"
#include "rbrcd/rng.hpp"
#include "rbrcd/synth.hpp"

namespace {

using namespace rbrcd;

struct Fixture {
    Graph g;
    Partition part;
};

const Fixture& fixture() {
    static Fixture f = [] {
        SynthConfig cfg;
        cfg.k = 10;
        cfg.m = 400;
        cfg.q = 0.05;
        cfg.alpha = 1.5;
        cfg.seed = 2;
        auto [g, truth] = generate_dcsbm(cfg);
        return Fixture{std::move(g), compact_labels(truth.labels)};
    }();
    return f;
}

void BM_modularity(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(modularity(f.g, f.part));
}
BENCHMARK(BM_modularity);

void BM_cluster_coefficient(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(cluster_coefficient(f.g, f.part));
}
BENCHMARK(BM_cluster_coefficient)->Unit(benchmark::kMillisecond);

void BM_strength(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(strength(f.g, f.part));
}
BENCHMARK(BM_strength);

} // namespace
