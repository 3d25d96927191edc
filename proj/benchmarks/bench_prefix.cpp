#include <benchmark/benchmark.h>

#include "divlab/prefix.hpp"
#include "divlab/short_interval.hpp"

using namespace divlab;

static void BM_prefix_build(benchmark::State& state) {
    u64 n = static_cast<u64>(state.range(0));
    for (auto _ : state) {
        DivisorPrefix pre(n);
        benchmark::DoNotOptimize(pre.sum(n));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_prefix_build)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

static void BM_delta_lookup(benchmark::State& state) {
    static DivisorPrefix pre(1000000);
    long double x = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pre.delta(x));
        x += 0.7L;
        if (x > 999999) x -= 999000;
    }
}
BENCHMARK(BM_delta_lookup);

static void BM_diff_mean_square_discrete(benchmark::State& state) {
    u64 T = static_cast<u64>(state.range(0));
    static DivisorPrefix pre(2 * 1000000 + 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(diff_mean_square_discrete(T, 50, pre).mean_square);
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(T));
}
BENCHMARK(BM_diff_mean_square_discrete)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
