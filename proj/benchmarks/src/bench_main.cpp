#include <benchmark/benchmark.h>

#include <cstdint>

#include "tolbip/baselines.hpp"
#include "tolbip/brute_force.hpp"
#include "tolbip/generators.hpp"
#include "tolbip/graph.hpp"
#include "tolbip/oracle.hpp"
#include "tolbip/rng.hpp"
#include "tolbip/tester.hpp"

using namespace tolbip;

namespace {

DenseGraph random_graph(uint32_t n, uint64_t seed) {
    Rng rng(seed);
    DenseGraph g(n);
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v)
            if (rng.bernoulli(0.5)) g.add_edge(u, v);
    return g;
}

void BM_exact_bip_distance(benchmark::State& state) {
    DenseGraph g = random_graph(static_cast<uint32_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(exact_bip_distance(g).distance);
}
BENCHMARK(BM_exact_bip_distance)->DenseRange(12, 18, 2); // cost doubles per vertex

void BM_bip_distance_wrt(benchmark::State& state) {
    auto n = static_cast<uint32_t>(state.range(0));
    DenseGraph g = random_graph(n, 11);
    Bipartition f(n);
    Rng rng(3);
    for (uint32_t v = 0; v < n; ++v) f.set(v, rng.bernoulli(0.5) ? Side::R : Side::L);
    for (auto _ : state) benchmark::DoNotOptimize(bip_distance_wrt(g, f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_bip_distance_wrt)->RangeMultiplier(2)->Range(256, 1024)->Complexity();

void BM_gen_planted_close(benchmark::State& state) {
    auto n = static_cast<uint32_t>(state.range(0));
    uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            gen_planted_close(n, Rat(1, 20), 0.5, Rat(1, 2), seed++).graph.edge_count());
}
BENCHMARK(BM_gen_planted_close)->Arg(300)->Arg(600);

void BM_run_tester(benchmark::State& state) {
    DenseGraph g = gen_planted_close(300, Rat(1, 20), 0.5, Rat(1, 2), 5).graph;
    TesterParams p;
    p.epsilon = Rat(1, 20);
    p.t_override = 4;
    p.x_size_override = static_cast<uint32_t>(state.range(0));
    p.z_size_override = 1000;
    uint64_t seed = 0;
    for (auto _ : state) {
        DenseGraphOracle o(g);
        p.seed = seed++;
        benchmark::DoNotOptimize(run_tester(o, p).accept);
    }
}
BENCHMARK(BM_run_tester)->DenseRange(8, 12, 2);

void BM_estimate_edges(benchmark::State& state) {
    DenseGraph g = random_graph(500, 13);
    uint64_t seed = 0;
    for (auto _ : state) {
        DenseGraphOracle o(g);
        benchmark::DoNotOptimize(estimate_edges(o, Rat(1, 20), seed++).value);
    }
}
BENCHMARK(BM_estimate_edges);

} // namespace

BENCHMARK_MAIN();
