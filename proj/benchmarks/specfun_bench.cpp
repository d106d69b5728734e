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

#include "beamsim/specfun.hpp"

namespace {

void BM_RegLowerGamma(benchmark::State& state)
{
    const double a = static_cast<double>(state.range(0)) / 10.0;
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(beamsim::specfun::reg_lower_gamma(a, x));
        x = x < 20.0 ? x + 0.37 : 0.5;
    }
}
BENCHMARK(BM_RegLowerGamma)->Arg(10)->Arg(32)->Arg(500);

void BM_ExpIntegralE1(benchmark::State& state)
{
    double x = 1e-4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(beamsim::specfun::exp_integral_e1(x));
        x = x < 50.0 ? x * 1.7 : 1e-4;
    }
}
BENCHMARK(BM_ExpIntegralE1);

void BM_LnGamma(benchmark::State& state)
{
    double x = 0.25;
    for (auto _ : state) {
        benchmark::DoNotOptimize(beamsim::specfun::ln_gamma(x));
        x = x < 100.0 ? x + 0.9 : 0.25;
    }
}
BENCHMARK(BM_LnGamma);

} // namespace
