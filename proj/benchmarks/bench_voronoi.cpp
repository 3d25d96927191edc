#include <benchmark/benchmark.h>

#include "divlab/prefix.hpp"
#include "divlab/sieve.hpp"
#include "divlab/voronoi.hpp"

using namespace divlab;

static void BM_voronoi_point(benchmark::State& state) {
    u64 N = static_cast<u64>(state.range(0));
    static auto tab = sieve_values(1, 100001, FuncKind{});
    static DivisorPrefix pre(200000);
    for (auto _ : state)
        benchmark::DoNotOptimize(delta_voronoi(150000.5, N, tab, pre).approx);
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(N));
}
BENCHMARK(BM_voronoi_point)->Arg(100)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_voronoi_grid(benchmark::State& state) {
    u64 N = static_cast<u64>(state.range(0));
    static auto tab = sieve_values(1, 10001, FuncKind{});
    static DivisorPrefix pre(200000);
    for (auto _ : state) {
        auto grid = voronoi_grid(1e5, 2e5, 64, N, tab, pre);
        benchmark::DoNotOptimize(grid.data());
    }
    state.SetItemsProcessed(state.iterations() * 64 * static_cast<int64_t>(N));
}
BENCHMARK(BM_voronoi_grid)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
