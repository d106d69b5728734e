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

#include "beamsim/random.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace beamsim {

//---------------------------------------------------------------------------//
/*!
 * Large-scale link parameters.
 *
 * Transmit power is normalized to one. Received power of beam pair i is
 * c d^-alpha lambda0^-1 G_t G_r sum_l |g_l|^2 with E|g_l|^2 = 1, so the
 * per-path small-scale power 1/lambda0 lives here and not in the fading draw.
 */
struct LinkBudget
{
    double intercept_c = 1.0;
    double distance_d = 1.0;  // m
    double alpha = 2.0;
    double noise_power = 1.0; // W
    double lambda0 = 1.0;     // mean total multipath count

    /// Throws DomainError unless every field is positive and finite.
    void validate() const;

    /// c d^-alpha.
    double path_gain() const;

    /// c d^-alpha / sigma^2, the reference SNR before antenna gain.
    double reference_snr() const { return path_gain() / noise_power; }

    /// Budget with c d^-alpha / sigma^2 equal to `reference_snr` (d = 1, sigma^2 = 1).
    static LinkBudget from_reference_snr(double reference_snr, double lambda0);
};

enum class FadingFamily
{
    nakagami_m,
    rayleigh,
    rician_k,
};

/// Small-scale fading family for the normalized path power |g|^2 (mean 1).
struct FadingModel
{
    FadingFamily family = FadingFamily::rayleigh;
    double parameter = 1.0; // m for Nakagami, linear K for Rician, unused for Rayleigh

    static FadingModel nakagami(double m) { return {FadingFamily::nakagami_m, m}; }
    static FadingModel rayleigh() { return {FadingFamily::rayleigh, 1.0}; }
    static FadingModel rician(double k_linear) { return {FadingFamily::rician_k, k_linear}; }

    void validate() const;

    /// Nakagami shape that matches this model's power moments.
    double equivalent_nakagami_m() const;

    std::string describe() const;
};

//---------------------------------------------------------------------------//
/*!
 * Path powers of one channel draw, grouped by beam pair.
 *
 * Stored in compressed form: `counts()[i]` paths belong to pair i and their
 * normalized powers are the contiguous range `pair_powers(i)`.
 */
class ChannelRealization
{
  public:
    ChannelRealization() = default;

    std::size_t pair_count() const noexcept { return counts_.size(); }
    std::span<const std::uint32_t> counts() const noexcept { return counts_; }
    std::span<const double> pair_powers(std::size_t pair) const;
    std::size_t total_paths() const noexcept { return powers_.size(); }

    /// sum_l |g_l|^2 over the paths of one pair.
    double pair_power_sum(std::size_t pair) const;

    /// Builds a realization from explicit per-pair path powers.
    static ChannelRealization from_pairs(const std::vector<std::vector<double>>& per_pair_powers);

  private:
    friend class ChannelSampler;

    std::vector<std::uint32_t> counts_;
    std::vector<std::size_t> offsets_{0};
    std::vector<double> powers_;
};

/// How path counts are drawn for the B beam pairs.
enum class PathSampling
{
    /// One Poisson(lambda0) total, each path dropped into a uniform pair.
    /// Same joint law as independent Poisson(lambda0 / B) per pair, with
    /// O(lambda0) work per draw instead of O(B).
    superposition,
    /// Independent Poisson(lambda0 / B) draw for every pair.
    per_pair,
};

/// lambda_d = lambda0 / B.
double per_beam_intensity(double lambda0, std::int64_t pair_count);

/// Poisson(lambda_d) path count.
std::uint32_t draw_path_count(double lambda_d, RandomStream& rng);

/// Normalized power |g|^2 with unit mean under `model`.
double draw_fading_power(const FadingModel& model, RandomStream& rng);

/// Moment-matched Nakagami shape (K+1)^2 / (2K+1) for a linear Rician factor.
double rician_k_to_nakagami_m(double k_linear);

/// Reusable generator that fills a ChannelRealization in place.
class ChannelSampler
{
  public:
    ChannelSampler(double lambda0, std::int64_t pair_count, FadingModel model,
                   PathSampling sampling = PathSampling::superposition);

    void draw(RandomStream& rng, ChannelRealization& out);

    double lambda0() const noexcept { return lambda0_; }
    std::size_t pair_count() const noexcept { return pair_count_; }
    const FadingModel& fading() const noexcept { return model_; }

  private:
    double lambda0_;
    std::size_t pair_count_;
    FadingModel model_;
    PathSampling sampling_;
    std::vector<std::uint32_t> scratch_pairs_;
    std::vector<std::size_t> scratch_cursor_;
};

/// B independent beam-pair entries with Poisson(lambda0 / B) paths each.
ChannelRealization realize_channel(double lambda0, std::int64_t pair_count, const FadingModel& model,
                                   RandomStream& rng, PathSampling sampling = PathSampling::superposition);

} // namespace beamsim
