// Serial reference kernels against their OpenMP counterparts.

#include <vector>

#include <benchmark/benchmark.h>

#include "mfobs/batch.hpp"
#include "mfobs/checks.hpp"

namespace {

using namespace mfobs;

std::vector<Scenario> gamma_sweep(int n) {
    std::vector<Scenario> out;
    for (int i = 0; i < n; ++i) {
        Scenario s = preset("wu-so3-K1");
        set_parameter(s, "gains.gamma", 5.0 + 5.0 * i);
        out.push_back(s);
    }
    return out;
}

void BM_RunBatchSerial(benchmark::State& state) {
    const auto scenarios = gamma_sweep(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_batch_serial(scenarios));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RunBatchParallel(benchmark::State& state) {
    const auto scenarios = gamma_sweep(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_batch(scenarios));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ProjectionOracleSerial(benchmark::State& state) {
    const auto inputs = random_nondegenerate_mat2(1, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(projection_oracle_serial(inputs, 3600));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ProjectionOracleParallel(benchmark::State& state) {
    const auto inputs = random_nondegenerate_mat2(1, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(projection_oracle(inputs, 3600));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LyapunovBatchSerial(benchmark::State& state) {
    const auto scenarios = random_so3_scenarios(1, static_cast<int>(state.range(0)), 1e-3, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lyapunov_batch_serial(scenarios, 1e-3));
    }
}

void BM_LyapunovBatchParallel(benchmark::State& state) {
    const auto scenarios = random_so3_scenarios(1, static_cast<int>(state.range(0)), 1e-3, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lyapunov_batch(scenarios, 1e-3));
    }
}

BENCHMARK(BM_RunBatchSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RunBatchParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ProjectionOracleSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ProjectionOracleParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LyapunovBatchSerial)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LyapunovBatchParallel)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
