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

#include "beamsim/throughput.hpp"

#include "beamsim/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace beamsim {

namespace {

std::int64_t exact_sqrt(const char* op, std::int64_t b)
{
    if (b < 1) throw DomainError(op, "B must be at least 1, got " + std::to_string(b));
    auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(b))));
    while (s * s > b) --s;
    while ((s + 1) * (s + 1) <= b) ++s;
    if (s * s != b) {
        throw NonSquareBeamCountError(op, "B = " + std::to_string(b) +
                                              " is not a perfect square (M_t = M_r = sqrt(B) is required)");
    }
    return s;
}

// Largest feasible sqrt(B): (1/F_t - N_b^2) / 2.
double sqrt_b_limit(const ThroughputConfig& cfg)
{
    const double nb2 = static_cast<double>(cfg.n_b * cfg.n_b);
    return (1.0 / cfg.f_t() - nb2) / 2.0;
}

// Stationarity residual in s = sqrt(B); strictly increasing in s.
double stationarity(double s, const ThroughputConfig& cfg)
{
    const double x = s * s * cfg.k;
    const double nb2 = static_cast<double>(cfg.n_b * cfg.n_b);
    return (1.0 + x) * std::log1p(x) / (cfg.k * s) - (1.0 / cfg.f_t() - (2.0 * s + nb2));
}

} // namespace

void ThroughputConfig::validate() const
{
    std::ostringstream os;
    if (!(t_f > 0.0) || !std::isfinite(t_f)) os << "t_f must be positive; ";
    if (!(t_total > 0.0) || !std::isfinite(t_total)) os << "t_total must be positive; ";
    if (n_b < 0) os << "n_b must be nonnegative; ";
    if (!(k > 0.0) || !std::isfinite(k)) os << "k must be positive; ";
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) os << "lambda0 must be positive; ";
    const std::string problems = os.str();
    if (!problems.empty()) throw DomainError("ThroughputConfig", problems.substr(0, problems.size() - 2));
}

double training_overhead(std::int64_t b, const ThroughputConfig& cfg)
{
    cfg.validate();
    const double s = static_cast<double>(exact_sqrt("training_overhead", b));
    return 2.0 * (2.0 * s + static_cast<double>(cfg.n_b * cfg.n_b)) * cfg.t_f;
}

double throughput_continuous(double b, const ThroughputConfig& cfg)
{
    cfg.validate();
    if (!(b >= 1.0)) throw DomainError("throughput", "B must be at least 1");
    const double overhead_fraction = cfg.f_t() * (2.0 * std::sqrt(b) + static_cast<double>(cfg.n_b * cfg.n_b));
    return (1.0 - overhead_fraction) * -std::expm1(-cfg.lambda0) * std::log1p(b * cfg.k);
}

double throughput(std::int64_t b, const ThroughputConfig& cfg)
{
    exact_sqrt("throughput", b);
    return throughput_continuous(static_cast<double>(b), cfg);
}

FeasibleRegion feasible_region(const ThroughputConfig& cfg)
{
    cfg.validate();
    FeasibleRegion region;
    const double s_max = sqrt_b_limit(cfg);
    if (s_max <= 1.0) return region;
    region.empty = false;
    region.b_max = s_max * s_max;
    return region;
}

double optimal_b_numeric(const ThroughputConfig& cfg)
{
    const FeasibleRegion region = feasible_region(cfg);
    if (region.empty) {
        std::ostringstream os;
        os << "optimal_b_numeric: beam training cannot complete within T = " << cfg.t_total
           << " s for any B >= 1 (F_t = " << cfg.f_t() << ", N_b = " << cfg.n_b << ")";
        throw InfeasibleError(os.str());
    }
    const double s_max = std::sqrt(region.b_max);
    double b_star = 1.0;
    if (stationarity(1.0, cfg) < 0.0) {
        auto residual = [&](double s) { return stationarity(s, cfg); };
        std::uintmax_t max_iter = 200;
        // 1e-10 relative in B needs better than 5e-11 relative in sqrt(B).
        boost::math::tools::eps_tolerance<double> tol(40);
        const auto [lo, hi] = boost::math::tools::toms748_solve(residual, 1.0, s_max, tol, max_iter);
        if (max_iter >= 200) throw NumericalError("optimal_b_numeric", "root bracketing did not converge");
        const double s = 0.5 * (lo + hi);
        b_star = s * s;
    }

    // The root must be a maximum of the objective.
    const double best = throughput_continuous(b_star, cfg);
    const double slack = 1e-12 * std::abs(best);
    const double up = b_star * (1.0 + 1e-3);
    if (up <= region.b_max && throughput_continuous(up, cfg) > best + slack) {
        throw NumericalError("optimal_b_numeric", "stationary point is not a maximum");
    }
    const double down = b_star * (1.0 - 1e-3);
    if (down >= 1.0 && throughput_continuous(down, cfg) > best + slack) {
        throw NumericalError("optimal_b_numeric", "stationary point is not a maximum");
    }
    return b_star;
}

double optimal_b_closed_form(const ThroughputConfig& cfg)
{
    cfg.validate();
    const double ft = cfg.f_t();
    const double root_k = std::sqrt(cfg.k);
    const double nb2 = static_cast<double>(cfg.n_b * cfg.n_b);
    const double disc = (1.0 - root_k * nb2) * ft * ft + root_k * ft;
    if (!(disc > 0.0)) {
        throw ApproximationInvalidError("optimal_b_closed_form",
                                        "discriminant is not positive (" + std::to_string(disc) + ")");
    }
    const double sqrt_b = (-ft + std::sqrt(disc)) / (ft * root_k);
    if (!(sqrt_b > 0.0)) {
        throw ApproximationInvalidError("optimal_b_closed_form", "approximate root is not positive");
    }
    return sqrt_b * sqrt_b;
}

double optimal_hpbw(double b_star)
{
    if (!(b_star >= 1.0) || !std::isfinite(b_star)) {
        throw DomainError("optimal_hpbw", "B* must be at least 1, got " + std::to_string(b_star));
    }
    return 360.0 / std::sqrt(b_star);
}

std::int64_t best_square_beam_count(double b_star, const ThroughputConfig& cfg)
{
    if (!(b_star >= 1.0)) throw DomainError("best_square_beam_count", "B* must be at least 1");
    const auto lo = static_cast<std::int64_t>(std::floor(std::sqrt(b_star)));
    const std::int64_t hi = lo + 1;
    const double tp_lo = throughput(lo * lo, cfg);
    const double tp_hi = throughput(hi * hi, cfg);
    return tp_hi > tp_lo ? hi * hi : lo * lo;
}

CoherenceModelRegistry::CoherenceModelRegistry()
{
    models_.emplace("doppler", [](double velocity, double carrier_freq) {
        const double doppler = velocity * carrier_freq / speed_of_light;
        return 9.0 / (16.0 * std::numbers::pi * doppler);
    });
}

void CoherenceModelRegistry::register_model(const std::string& tag, CoherenceModel model)
{
    if (tag.empty() || !model) throw DomainError("coherence_time", "model needs a tag and a callable");
    std::unique_lock lock(mutex_);
    models_[tag] = std::move(model);
}

bool CoherenceModelRegistry::contains(const std::string& tag) const
{
    std::shared_lock lock(mutex_);
    return models_.contains(tag);
}

std::vector<std::string> CoherenceModelRegistry::tags() const
{
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    for (const auto& entry : models_) out.push_back(entry.first);
    return out;
}

double CoherenceModelRegistry::evaluate(const std::string& tag, double velocity, double carrier_freq) const
{
    if (!(velocity > 0.0)) throw DomainError("coherence_time", "velocity must be positive");
    if (!(carrier_freq > 0.0)) throw DomainError("coherence_time", "carrier frequency must be positive");
    CoherenceModel model;
    {
        std::shared_lock lock(mutex_);
        const auto it = models_.find(tag);
        if (it == models_.end()) throw DomainError("coherence_time", "unknown coherence model '" + tag + "'");
        model = it->second;
    }
    return model(velocity, carrier_freq);
}

CoherenceModelRegistry& coherence_models()
{
    static CoherenceModelRegistry registry;
    return registry;
}

double coherence_time(double velocity, double carrier_freq, const std::string& model_tag)
{
    return coherence_models().evaluate(model_tag, velocity, carrier_freq);
}

CoherenceModel make_inverse_velocity_model(double t_ref, double v_ref)
{
    if (!(t_ref > 0.0) || !(v_ref > 0.0)) {
        throw DomainError("coherence_time", "reference time and velocity must be positive");
    }
    return [t_ref, v_ref](double velocity, double) { return t_ref * v_ref / velocity; };
}

double calibrate_interval_for_hpbw(ThroughputConfig cfg, double target_hpbw)
{
    if (!(target_hpbw > 0.0 && target_hpbw < 360.0)) {
        throw DomainError("calibrate_interval_for_hpbw", "target HPBW must lie in (0, 360)");
    }
    cfg.validate();
    // Smallest T with a nonempty feasible region: 2 + N_b^2 < 1/F_t.
    const double nb2 = static_cast<double>(cfg.n_b * cfg.n_b);
    const double t_min = 2.0 * cfg.t_f * (2.0 + nb2);
    auto residual = [&](double log_t) {
        cfg.t_total = std::exp(log_t);
        return optimal_hpbw(optimal_b_numeric(cfg)) - target_hpbw;
    };
    double lo = std::log(t_min) + 1e-9;
    double hi = lo + 1.0;
    while (residual(hi) > 0.0) {
        hi += 1.0;
        if (hi > lo + 80.0) throw NumericalError("calibrate_interval_for_hpbw", "could not bracket the target");
    }
    if (residual(lo) < 0.0) throw NumericalError("calibrate_interval_for_hpbw", "target HPBW exceeds the omni limit");
    std::uintmax_t max_iter = 200;
    boost::math::tools::eps_tolerance<double> tol(45);
    const auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, tol, max_iter);
    return std::exp(0.5 * (a + b));
}

} // namespace beamsim
