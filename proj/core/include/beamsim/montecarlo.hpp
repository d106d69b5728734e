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

#pragma once

#include "beamsim/beam.hpp"
#include "beamsim/channel.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace beamsim {

enum class RateUnits
{
    nats,
    bits,
};

const char* to_string(RateUnits units);
RateUnits parse_rate_units(const std::string& text);

/// Converts a value in nats to `units`.
double from_nats(double nats, RateUnits units);

struct SimConfig
{
    LinkBudget link;
    BeamGrid grid;
    FadingModel fading;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    RateUnits units = RateUnits::nats;
    PathSampling sampling = PathSampling::superposition;

    void validate() const;
};

struct SEEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    double ci95 = 0.0; // 1.96 * std_error
    RateUnits units = RateUnits::nats;
};

/// Streaming mean and variance (Welford), mergeable with Chan's update.
struct RunningStats
{
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) noexcept;
    static RunningStats merge(const RunningStats& lhs, const RunningStats& rhs) noexcept;
    double variance() const noexcept; // unbiased
};

/// Trials per accumulation block; blocks are the unit of work distribution.
inline constexpr std::uint64_t trials_per_block = 2048;

/// Worker count from BEAMSIM_THREADS (0 or unset = hardware concurrency).
unsigned default_worker_count();

/// Mean of ln(1 + P_opt / sigma^2) over independent realizations.
///
/// Trial t draws from RandomStream(seed, t) and blocks are merged in a fixed
/// tree order, so the result is bit-identical for any `workers` value
/// (0 = default_worker_count()).
SEEstimate estimate_se(const SimConfig& config, unsigned workers = 0);

struct EmpiricalCdf
{
    std::vector<std::pair<double, double>> points; // (normalized power, probability)
    std::uint64_t occupied_trials = 0;
    std::uint64_t empty_trials = 0;
    double empty_fraction = 0.0;
};

/// Empirical CDF of max_i sum_{l in L_i} |g_l|^2 over trials with at least
/// one path. Throws NumericalError when every trial is empty.
EmpiricalCdf empirical_opt_power_cdf(const SimConfig& config, std::span<const double> grid_points,
                                     unsigned workers = 0);

} // namespace beamsim
