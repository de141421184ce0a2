// Copyright 2026 The vbqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference against the OpenMP kernels: Monte Carlo protocol
// executions (quantum path) and one sigma_m attack cell (fast path).

#include <benchmark/benchmark.h>
#include <omp.h>

#include "vbqc/harness.hpp"

namespace {

using namespace vbqc;

ExperimentConfig noisy_config() {
    ExperimentConfig c;
    c.pattern = "brickwork-2x5";
    c.colouring = "bipartite";
    c.n = 40;
    c.d = 20;
    c.omega = 0.2;
    c.trials = 200;
    c.seed = 11;
    c.behaviour.kind = BehaviourSpec::Kind::Depolarizing;
    c.behaviour.p = 0.04;
    return c;
}

void BM_MonteCarloSerial(benchmark::State &state) {
    const ExperimentConfig c = noisy_config();
    for (auto _ : state) {
        benchmark::DoNotOptimize(monte_carlo_serial(c).accept);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trials));
}

void BM_MonteCarloOpenMP(benchmark::State &state) {
    ExperimentConfig c = noisy_config();
    c.jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(monte_carlo(c).accept);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trials));
}

void attack_cell_bench(benchmark::State &state, bool parallel) {
    const auto params = ProtocolParams::make(64, 32, 4, 2);
    const Colouring c{2, {0, 1}};
    const std::size_t trials = 200000;
    if (parallel) {
        omp_set_num_threads(static_cast<int>(state.range(0)));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(attack_cell(params, 28, 0, c, trials, 3, parallel).failures);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
}

void BM_AttackCellSerial(benchmark::State &state) {
    attack_cell_bench(state, false);
}

void BM_AttackCellOpenMP(benchmark::State &state) {
    attack_cell_bench(state, true);
}

const int kMaxThreads = omp_get_num_procs();

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarloOpenMP)->RangeMultiplier(2)->Range(1, kMaxThreads)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AttackCellSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AttackCellOpenMP)->RangeMultiplier(2)->Range(1, kMaxThreads)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
