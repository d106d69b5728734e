// SPDX-License-Identifier: Apache-2.0
//
// beamsim: optimal analog beamforming analysis for sparse mmWave links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "beamsim/montecarlo.hpp"

namespace {

// Arg 0: worker count. Throughput in trials per second.
void BM_EstimateSe(benchmark::State& state)
{
    beamsim::SimConfig config;
    config.link = beamsim::LinkBudget::from_reference_snr(0.01, 1.9);
    config.grid = beamsim::BeamGrid::from_pair_count(625);
    config.fading = beamsim::FadingModel::nakagami(3.2);
    config.trials = 20000;
    config.seed = 1;
    const auto workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(beamsim::estimate_se(config, workers).mean);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.trials));
}
BENCHMARK(BM_EstimateSe)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace
