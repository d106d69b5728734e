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

#include "beamsim/analytic.hpp"

namespace {

void BM_UpperNakagami(benchmark::State& state)
{
    const double m = static_cast<double>(state.range(0)) / 10.0;
    const auto model = beamsim::SparseModel::from_sparsity(1.9, 625, m);
    for (auto _ : state) benchmark::DoNotOptimize(beamsim::analytic::se_upper_nakagami(model, 3.28).value);
}
BENCHMARK(BM_UpperNakagami)->Arg(10)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_UpperNakagamiQuadrature(benchmark::State& state)
{
    const auto model = beamsim::SparseModel::from_sparsity(1.9, 625, 3.2);
    for (auto _ : state) benchmark::DoNotOptimize(beamsim::analytic::se_upper_nakagami_quadrature(model, 3.28));
}
BENCHMARK(BM_UpperNakagamiQuadrature)->Unit(benchmark::kMicrosecond);

void BM_OptPowerCdf(benchmark::State& state)
{
    const auto model = beamsim::SparseModel::from_sparsity(1.9, 625, 3.2);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(beamsim::analytic::opt_power_cdf(x, model));
        x = x < 10.0 ? x + 0.013 : 0.0;
    }
}
BENCHMARK(BM_OptPowerCdf);

} // namespace
