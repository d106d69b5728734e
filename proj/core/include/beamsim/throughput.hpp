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

#include <cstdint>
#include <functional>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

namespace beamsim {

//---------------------------------------------------------------------------//
/*!
 * Beam-training overhead parameters.
 *
 * Training takes T_o = 2 (2 sqrt(B) + N_b^2) T_f out of every interval T
 * (typically the channel coherence time), with M_t = M_r = sqrt(B).
 */
struct ThroughputConfig
{
    double t_f = 5e-6;      // control frame duration, s
    double t_total = 1e-3;  // training + data interval T, s
    std::int64_t n_b = 4;   // beam refinement parameter
    double k = 0.01 / 1.9;  // per-beam SNR scale lambda0^-1 c d^-alpha / sigma^2
    double lambda0 = 1.9;

    /// F_t = 2 T_f / T.
    double f_t() const { return 2.0 * t_f / t_total; }

    void validate() const;
};

struct FeasibleRegion
{
    bool empty = true;
    double b_min = 1.0;
    double b_max = 0.0; // ((1/F_t - N_b^2) / 2)^2
};

/// 2 (2 sqrt(B) + N_b^2) T_f. B must be a perfect square.
double training_overhead(std::int64_t b, const ThroughputConfig& cfg);

/// (1 - T_o / T) (1 - e^{-lambda0}) ln(1 + B K) in nats; negative when
/// training overruns T. B must be a perfect square.
double throughput(std::int64_t b, const ThroughputConfig& cfg);

/// Same objective with B treated as a continuous variable >= 1.
double throughput_continuous(double b, const ThroughputConfig& cfg);

/// {B >= 1 : 2 (2 sqrt(B) + N_b^2) T_f < T}.
FeasibleRegion feasible_region(const ThroughputConfig& cfg);

/// Continuous maximizer of the throughput from its stationarity condition
///   (1 + B K) ln(1 + B K) / (K sqrt(B)) = 1 / F_t - (2 sqrt(B) + N_b^2),
/// solved by bracketed root finding in sqrt(B) to relative tolerance 1e-10.
/// Returns 1 when the objective already decreases at B = 1.
/// Throws InfeasibleError when no B yields positive throughput.
double optimal_b_numeric(const ThroughputConfig& cfg);

/// Closed-form root of F_t sqrt(K) B + 2 F_t sqrt(B) + N_b^2 F_t - 1 = 0,
/// which replaces (1 + x) ln(1 + x) by x sqrt(x). Throws
/// ApproximationInvalidError when the discriminant is not positive.
double optimal_b_closed_form(const ThroughputConfig& cfg);

/// 360 / sqrt(B*) degrees.
double optimal_hpbw(double b_star);

/// Perfect-square beam count adjacent to `b_star` with the larger throughput.
std::int64_t best_square_beam_count(double b_star, const ThroughputConfig& cfg);

//---------------------------------------------------------------------------//
// Coherence time

inline constexpr double speed_of_light = 299792458.0; // m/s

/// T_c(velocity [m/s], carrier frequency [Hz]) in seconds.
using CoherenceModel = std::function<double(double velocity, double carrier_freq)>;

/// Named coherence-time models. Holds "doppler" (T_c = 9 / (16 pi f_D),
/// f_D = v f_c / c) from construction; further models can be registered.
class CoherenceModelRegistry
{
  public:
    CoherenceModelRegistry();

    void register_model(const std::string& tag, CoherenceModel model);
    bool contains(const std::string& tag) const;
    std::vector<std::string> tags() const;
    double evaluate(const std::string& tag, double velocity, double carrier_freq) const;

  private:
    mutable std::shared_mutex mutex_;
    std::map<std::string, CoherenceModel> models_;
};

/// Process-wide registry used by coherence_time().
CoherenceModelRegistry& coherence_models();

inline constexpr const char* default_coherence_model = "doppler";

/// Coherence time under a registered model; throws DomainError for unknown tags.
double coherence_time(double velocity, double carrier_freq, const std::string& model_tag = default_coherence_model);

/// T_c = t_ref * v_ref / v, independent of carrier frequency.
CoherenceModel make_inverse_velocity_model(double t_ref, double v_ref);

/// Interval T for which optimal_hpbw(optimal_b_numeric(cfg)) equals
/// `target_hpbw`, with all other fields of `cfg` held fixed.
double calibrate_interval_for_hpbw(ThroughputConfig cfg, double target_hpbw);

} // namespace beamsim
