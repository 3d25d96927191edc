#include <benchmark/benchmark.h>

#include "divlab/sieve.hpp"

using namespace divlab;

static void BM_sieve_d(benchmark::State& state) {
    u64 n = static_cast<u64>(state.range(0));
    for (auto _ : state) {
        auto v = sieve_values(1, n + 1, FuncKind{});
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_sieve_d)->Arg(100000)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

static void BM_sieve_dk(benchmark::State& state) {
    int k = static_cast<int>(state.range(0));
    constexpr u64 n = 1000000;
    for (auto _ : state) {
        auto v = sieve_values(1, n + 1, FuncKind{func_tag::dk, k});
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_sieve_dk)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_sum_range_d(benchmark::State& state) {
    u64 n = static_cast<u64>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sum_range(1, n + 1, FuncKind{}));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_sum_range_d)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

static void BM_hyperbola(benchmark::State& state) {
    u64 x = static_cast<u64>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(divisor_sum_hyperbola(x));
}
BENCHMARK(BM_hyperbola)->Arg(1000000)->Arg(100000000)->Arg(10000000000);

static void BM_factorize(benchmark::State& state) {
    u64 base = static_cast<u64>(state.range(0));
    u64 i = 0;
    for (auto _ : state) {
        auto f = factorize(base + (i++ & 1023));
        benchmark::DoNotOptimize(f.factors.data());
    }
}
BENCHMARK(BM_factorize)->Arg(1000003)->Arg(1000000007)->Arg(1000000000039);

BENCHMARK_MAIN();
