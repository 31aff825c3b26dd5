// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "hamcycle/harness.hpp"
#include "hamcycle/oracle.hpp"

using namespace hamcycle;

namespace {

Permutation identity(Vertex n) {
    Permutation pi;
    for (Vertex v = 1; v <= n; ++v) pi.push_back(v);
    return pi;
}

void BM_NbaSerial(benchmark::State& state) {
    const auto n = static_cast<Vertex>(state.range(0));
    const CycleParams params = validate_params(n, 3, 2);
    const Permutation ref = identity(n);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_nba_serial(params, ref));
}

void BM_NbaParallel(benchmark::State& state) {
    const auto n = static_cast<Vertex>(state.range(0));
    const CycleParams params = validate_params(n, 3, 2);
    const Permutation ref = identity(n);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_nba(params, ref));
}

void BM_EstimateSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(estimate_prob_serial(12, 4, 3, 2.5 / 12.0, 100, 1));
}

void BM_EstimateParallel(benchmark::State& state) {
    const auto jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_prob(12, 4, 3, 2.5 / 12.0, 100, 1, jobs));
}

SweepSpec bench_spec(int jobs) {
    SweepSpec spec = preset("tight", 4, 12);
    spec.trials = 40;
    spec.seed = 1;
    spec.jobs = jobs;
    return spec;
}

void BM_SweepSerial(benchmark::State& state) {
    const SweepSpec spec = bench_spec(1);
    for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(spec));
}

void BM_SweepParallel(benchmark::State& state) {
    const SweepSpec spec = bench_spec(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sweep(spec));
}

} // namespace

BENCHMARK(BM_NbaSerial)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NbaParallel)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EstimateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
