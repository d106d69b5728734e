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

#include "beamsim/montecarlo.hpp"

#include "beamsim/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace beamsim {

namespace {

std::uint64_t block_count(std::uint64_t trials)
{
    return (trials + trials_per_block - 1) / trials_per_block;
}

// Runs fn(block) for every block index on `workers` threads. Each block is
// executed exactly once; the first exception is rethrown after joining.
template <class MakeWorker>
void run_blocks(std::uint64_t blocks, unsigned workers, MakeWorker make_worker)
{
    workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(workers, 1u), std::max<std::uint64_t>(blocks, 1)));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto body = [&] {
        try {
            auto work = make_worker();
            for (std::uint64_t blk = next++; blk < blocks; blk = next++) work(blk);
        }
        catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = blocks;
        }
    };

    if (workers == 1) {
        body();
    }
    else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    }
    if (failure) std::rethrow_exception(failure);
}

RunningStats tree_merge(std::vector<RunningStats> stats)
{
    if (stats.empty()) return {};
    while (stats.size() > 1) {
        std::vector<RunningStats> next;
        next.reserve((stats.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < stats.size(); i += 2) next.push_back(RunningStats::merge(stats[i], stats[i + 1]));
        if (stats.size() % 2 == 1) next.push_back(stats.back());
        stats = std::move(next);
    }
    return stats.front();
}

} // namespace

const char* to_string(RateUnits units)
{
    return units == RateUnits::bits ? "bits" : "nats";
}

RateUnits parse_rate_units(const std::string& text)
{
    if (text == "nats") return RateUnits::nats;
    if (text == "bits") return RateUnits::bits;
    throw DomainError("units", "expected 'nats' or 'bits', got '" + text + "'");
}

double from_nats(double nats, RateUnits units)
{
    return units == RateUnits::bits ? nats / std::numbers::ln2 : nats;
}

void SimConfig::validate() const
{
    link.validate();
    fading.validate();
    if (trials < 1) throw DomainError("SimConfig", "trials must be at least 1");
    if (grid.b != grid.m_t * grid.m_r || grid.b < 1) throw DomainError("SimConfig", "inconsistent beam grid");
}

void RunningStats::push(double x) noexcept
{
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
}

RunningStats RunningStats::merge(const RunningStats& lhs, const RunningStats& rhs) noexcept
{
    if (lhs.count == 0) return rhs;
    if (rhs.count == 0) return lhs;
    RunningStats out;
    out.count = lhs.count + rhs.count;
    const double n = static_cast<double>(out.count);
    const double delta = rhs.mean - lhs.mean;
    out.mean = lhs.mean + delta * static_cast<double>(rhs.count) / n;
    out.m2 = lhs.m2 + rhs.m2 + delta * delta * static_cast<double>(lhs.count) * static_cast<double>(rhs.count) / n;
    return out;
}

double RunningStats::variance() const noexcept
{
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
}

unsigned default_worker_count()
{
    if (const char* env = std::getenv("BEAMSIM_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SEEstimate estimate_se(const SimConfig& config, unsigned workers)
{
    config.validate();
    if (workers == 0) workers = default_worker_count();

    const std::uint64_t blocks = block_count(config.trials);
    std::vector<RunningStats> block_stats(blocks);
    const double noise = config.link.noise_power;

    run_blocks(blocks, workers, [&] {
        return [&, sampler = ChannelSampler(config.link.lambda0, config.grid.b, config.fading, config.sampling),
                realization = ChannelRealization()](std::uint64_t blk) mutable {
            RunningStats stats;
            const std::uint64_t first = blk * trials_per_block;
            const std::uint64_t last = std::min(config.trials, first + trials_per_block);
            for (std::uint64_t t = first; t < last; ++t) {
                RandomStream rng(config.seed, t);
                sampler.draw(rng, realization);
                const BeamSelection best = select_optimal_pair(realization, config.link, config.grid);
                stats.push(from_nats(std::log1p(best.opt_power / noise), config.units));
            }
            block_stats[blk] = stats;
        };
    });

    const RunningStats total = tree_merge(std::move(block_stats));
    SEEstimate estimate;
    estimate.mean = total.mean;
    estimate.trials = total.count;
    estimate.std_error = std::sqrt(total.variance() / static_cast<double>(total.count));
    estimate.ci95 = 1.96 * estimate.std_error;
    estimate.units = config.units;
    return estimate;
}

EmpiricalCdf empirical_opt_power_cdf(const SimConfig& config, std::span<const double> grid_points, unsigned workers)
{
    config.validate();
    for (std::size_t i = 0; i < grid_points.size(); ++i) {
        if (!(grid_points[i] >= 0.0)) throw DomainError("empirical_opt_power_cdf", "grid points must be nonnegative");
        if (i > 0 && grid_points[i] < grid_points[i - 1]) {
            throw DomainError("empirical_opt_power_cdf", "grid points must be sorted");
        }
    }
    if (workers == 0) workers = default_worker_count();

    // -1 marks a trial in which every pair is empty.
    std::vector<double> maxima(config.trials, -1.0);
    run_blocks(block_count(config.trials), workers, [&] {
        return [&, sampler = ChannelSampler(config.link.lambda0, config.grid.b, config.fading, config.sampling),
                realization = ChannelRealization()](std::uint64_t blk) mutable {
            const std::uint64_t first = blk * trials_per_block;
            const std::uint64_t last = std::min(config.trials, first + trials_per_block);
            for (std::uint64_t t = first; t < last; ++t) {
                RandomStream rng(config.seed, t);
                sampler.draw(rng, realization);
                if (realization.total_paths() > 0) maxima[t] = max_pair_power_sum(realization);
            }
        };
    });

    std::vector<double> occupied;
    occupied.reserve(maxima.size());
    for (double v : maxima) {
        if (v >= 0.0) occupied.push_back(v);
    }
    EmpiricalCdf cdf;
    cdf.occupied_trials = occupied.size();
    cdf.empty_trials = config.trials - occupied.size();
    cdf.empty_fraction = static_cast<double>(cdf.empty_trials) / static_cast<double>(config.trials);
    if (occupied.empty()) {
        throw NumericalError("empirical_opt_power_cdf", "every trial was empty; the conditional CDF is undefined");
    }
    std::sort(occupied.begin(), occupied.end());
    const double n = static_cast<double>(occupied.size());
    cdf.points.reserve(grid_points.size());
    for (double x : grid_points) {
        const auto below = std::upper_bound(occupied.begin(), occupied.end(), x) - occupied.begin();
        cdf.points.emplace_back(x, static_cast<double>(below) / n);
    }
    return cdf;
}

} // namespace beamsim
