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

#include "beamsim/channel.hpp"

#include "beamsim/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace beamsim {

namespace {

void require_positive(const char* op, const char* name, double value)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os << name << " must be positive and finite, got " << value;
        throw DomainError(op, os.str());
    }
}

void require_pair_count(const char* op, std::int64_t pair_count)
{
    if (pair_count < 1) {
        throw DomainError(op, "beam pair count must be at least 1, got " + std::to_string(pair_count));
    }
}

} // namespace

void LinkBudget::validate() const
{
    require_positive("LinkBudget", "intercept_c", intercept_c);
    require_positive("LinkBudget", "distance_d", distance_d);
    require_positive("LinkBudget", "alpha", alpha);
    require_positive("LinkBudget", "noise_power", noise_power);
    require_positive("LinkBudget", "lambda0", lambda0);
}

double LinkBudget::path_gain() const
{
    return intercept_c * std::pow(distance_d, -alpha);
}

LinkBudget LinkBudget::from_reference_snr(double reference_snr, double lambda0)
{
    LinkBudget link;
    link.intercept_c = reference_snr;
    link.lambda0 = lambda0;
    link.validate();
    return link;
}

void FadingModel::validate() const
{
    switch (family) {
    case FadingFamily::nakagami_m:
        if (!(parameter >= 0.5) || !std::isfinite(parameter)) {
            throw DomainError("FadingModel", "Nakagami shape m must be >= 0.5, got " + std::to_string(parameter));
        }
        break;
    case FadingFamily::rayleigh:
        break;
    case FadingFamily::rician_k:
        if (!(parameter >= 0.0) || !std::isfinite(parameter)) {
            throw DomainError("FadingModel", "Rician K must be >= 0, got " + std::to_string(parameter));
        }
        break;
    }
}

double FadingModel::equivalent_nakagami_m() const
{
    validate();
    switch (family) {
    case FadingFamily::nakagami_m: return parameter;
    case FadingFamily::rayleigh: return 1.0;
    case FadingFamily::rician_k: return rician_k_to_nakagami_m(parameter);
    }
    return 1.0;
}

std::string FadingModel::describe() const
{
    std::ostringstream os;
    switch (family) {
    case FadingFamily::nakagami_m: os << "nakagami(m=" << parameter << ")"; break;
    case FadingFamily::rayleigh: os << "rayleigh"; break;
    case FadingFamily::rician_k: os << "rician(K=" << parameter << ")"; break;
    }
    return os.str();
}

std::span<const double> ChannelRealization::pair_powers(std::size_t pair) const
{
    if (pair >= counts_.size()) {
        throw DomainError("ChannelRealization", "pair index " + std::to_string(pair) + " out of range");
    }
    return std::span<const double>(powers_).subspan(offsets_[pair], counts_[pair]);
}

double ChannelRealization::pair_power_sum(std::size_t pair) const
{
    double sum = 0.0;
    for (double g : pair_powers(pair)) sum += g;
    return sum;
}

ChannelRealization ChannelRealization::from_pairs(const std::vector<std::vector<double>>& per_pair_powers)
{
    ChannelRealization out;
    out.counts_.reserve(per_pair_powers.size());
    out.offsets_.reserve(per_pair_powers.size() + 1);
    for (const auto& pair : per_pair_powers) {
        for (double g : pair) {
            if (!(g >= 0.0)) throw DomainError("ChannelRealization", "path power must be nonnegative");
            out.powers_.push_back(g);
        }
        out.counts_.push_back(static_cast<std::uint32_t>(pair.size()));
        out.offsets_.push_back(out.powers_.size());
    }
    return out;
}

double per_beam_intensity(double lambda0, std::int64_t pair_count)
{
    require_positive("per_beam_intensity", "lambda0", lambda0);
    require_pair_count("per_beam_intensity", pair_count);
    return lambda0 / static_cast<double>(pair_count);
}

std::uint32_t draw_path_count(double lambda_d, RandomStream& rng)
{
    require_positive("draw_path_count", "lambda_d", lambda_d);
    return std::poisson_distribution<std::uint32_t>(lambda_d)(rng);
}

double draw_fading_power(const FadingModel& model, RandomStream& rng)
{
    switch (model.family) {
    case FadingFamily::nakagami_m: {
        const double m = model.parameter;
        if (!(m >= 0.5)) {
            throw DomainError("draw_fading_power", "Nakagami shape m must be >= 0.5, got " + std::to_string(m));
        }
        return std::gamma_distribution<double>(m, 1.0 / m)(rng);
    }
    case FadingFamily::rayleigh:
        return std::exponential_distribution<double>(1.0)(rng);
    case FadingFamily::rician_k: {
        const double k = model.parameter;
        if (!(k >= 0.0)) throw DomainError("draw_fading_power", "Rician K must be >= 0");
        // Unit-power LOS + scatter decomposition: |sqrt(K) + w|^2 / (1 + K), w ~ CN(0, 1).
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        const double re = std::sqrt(k) + normal(rng);
        const double im = normal(rng);
        return (re * re + im * im) / (1.0 + k);
    }
    }
    return 0.0;
}

double rician_k_to_nakagami_m(double k_linear)
{
    if (!(k_linear >= 0.0)) {
        throw DomainError("rician_k_to_nakagami_m", "K must be nonnegative, got " + std::to_string(k_linear));
    }
    if (std::isinf(k_linear)) return k_linear;
    return (k_linear + 1.0) * (k_linear + 1.0) / (2.0 * k_linear + 1.0);
}

ChannelSampler::ChannelSampler(double lambda0, std::int64_t pair_count, FadingModel model, PathSampling sampling)
    : lambda0_(lambda0), pair_count_(0), model_(model), sampling_(sampling)
{
    require_positive("realize_channel", "lambda0", lambda0);
    require_pair_count("realize_channel", pair_count);
    model_.validate();
    pair_count_ = static_cast<std::size_t>(pair_count);
}

void ChannelSampler::draw(RandomStream& rng, ChannelRealization& out)
{
    const std::size_t b = pair_count_;
    out.counts_.assign(b, 0);
    out.offsets_.resize(b + 1);
    out.powers_.clear();

    if (sampling_ == PathSampling::per_pair) {
        std::poisson_distribution<std::uint32_t> count_dist(lambda0_ / static_cast<double>(b));
        out.offsets_[0] = 0;
        for (std::size_t i = 0; i < b; ++i) {
            const std::uint32_t n = count_dist(rng);
            out.counts_[i] = n;
            for (std::uint32_t l = 0; l < n; ++l) out.powers_.push_back(draw_fading_power(model_, rng));
            out.offsets_[i + 1] = out.powers_.size();
        }
        return;
    }

    const std::uint32_t total = std::poisson_distribution<std::uint32_t>(lambda0_)(rng);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(b - 1));
    scratch_pairs_.resize(total);
    for (auto& pair : scratch_pairs_) {
        pair = pick(rng);
        ++out.counts_[pair];
    }
    out.offsets_[0] = 0;
    for (std::size_t i = 0; i < b; ++i) out.offsets_[i + 1] = out.offsets_[i] + out.counts_[i];
    out.powers_.resize(total);
    // Counting sort into pair order; powers are drawn in path order.
    scratch_cursor_.assign(out.offsets_.begin(), out.offsets_.end() - 1);
    for (std::uint32_t l = 0; l < total; ++l) {
        out.powers_[scratch_cursor_[scratch_pairs_[l]]++] = draw_fading_power(model_, rng);
    }
}

ChannelRealization realize_channel(double lambda0, std::int64_t pair_count, const FadingModel& model,
                                   RandomStream& rng, PathSampling sampling)
{
    ChannelSampler sampler(lambda0, pair_count, model, sampling);
    ChannelRealization out;
    sampler.draw(rng, out);
    return out;
}

} // namespace beamsim
