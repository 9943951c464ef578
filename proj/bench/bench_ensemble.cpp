// Copyright 2026 The memslab Authors
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

// Serial reference generator against the OpenMP kernel.

#include <benchmark/benchmark.h>

#include "memslab/ensemble.hpp"
#include "memslab/telesim.hpp"
#include "memslab/families.hpp"

namespace {

void BM_GenerateSerial(benchmark::State &state) {
    const int rank = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(memslab::generate_records_serial(rank, 30000, 42));
    }
    state.SetItemsProcessed(state.iterations() * 30000);
}

void BM_GenerateParallel(benchmark::State &state) {
    const int rank = static_cast<int>(state.range(0));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(memslab::generate_records(rank, 30000, 42, threads));
    }
    state.SetItemsProcessed(state.iterations() * 30000);
}

void BM_OptimizeCorrections(benchmark::State &state) {
    const memslab::DensityMatrix rho = memslab::make_state(memslab::FamilyId::kRho3, 0.8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(memslab::telesim::optimize_corrections(rho));
    }
}

} // namespace

BENCHMARK(BM_GenerateSerial)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateParallel)
    ->ArgsProduct({{2, 3, 4}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_OptimizeCorrections)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
