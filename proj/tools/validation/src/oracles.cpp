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

#include "beamsim_validation/oracles.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace beamsim::oracle {

namespace {

constexpr double euler_gamma = 0.57721566490153286060651209008240243;

} // namespace

double stirling_ln_gamma(double x)
{
    if (!(x > 0.0)) throw std::domain_error("stirling_ln_gamma: x must be positive");
    double shift = 0.0;
    while (x < 20.0) {
        shift += std::log(x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli-number correction B_{2k} / (2k (2k - 1) x^{2k-1}), k = 1..7
    const double series =
        inv * (1.0 / 12.0 -
               inv2 * (1.0 / 360.0 -
                       inv2 * (1.0 / 1260.0 -
                               inv2 * (1.0 / 1680.0 -
                                       inv2 * (1.0 / 1188.0 - inv2 * (691.0 / 360360.0 - inv2 * (1.0 / 156.0)))))));
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

double reg_lower_gamma_quadrature(double m, double x)
{
    if (x == 0.0) return 0.0;
    const double log_norm = std::lgamma(m);
    auto density = [=](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp((m - 1.0) * std::log(t) - t - log_norm);
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    if (x <= m) {
        return integrator.integrate(density, 0.0, x, 1e-15);
    }
    boost::math::quadrature::exp_sinh<double> tail;
    const double upper = tail.integrate(density, x, std::numeric_limits<double>::infinity(), 1e-15);
    return 1.0 - upper;
}

double exp_integral_e1_quadrature(double x)
{
    if (!(x > 0.0)) throw std::domain_error("exp_integral_e1_quadrature: x must be positive");
    if (x <= 1.0) {
        auto ein = [](double t) { return t == 0.0 ? 1.0 : -std::expm1(-t) / t; };
        boost::math::quadrature::tanh_sinh<double> integrator;
        const double ein_x = integrator.integrate(ein, 0.0, x, 1e-15);
        return -euler_gamma - std::log(x) + ein_x;
    }
    // Substitute t = x (1 + u) so the integrand e^{-x u} / (1 + u) times e^{-x} has unit scale.
    auto shifted = [=](double u) { return std::exp(-x * u) / (1.0 + u); };
    boost::math::quadrature::exp_sinh<double> tail;
    return std::exp(-x) * tail.integrate(shifted, 0.0, std::numeric_limits<double>::infinity(), 1e-15);
}

double exp_integral_e1_small_series(double x, int terms)
{
    // sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    double sum = 0.0;
    double power = 1.0;
    double factorial = 1.0;
    for (int k = 1; k <= terms; ++k) {
        power *= x;
        factorial *= k;
        sum += (k % 2 == 1 ? 1.0 : -1.0) * power / (k * factorial);
    }
    return -euler_gamma - std::log(x) + sum;
}

double log_capacity_of_exponential_max(int k, double rho)
{
    if (k <= 0) return 0.0;
    auto integrand = [=](double x) {
        const double y = -std::expm1(-x);
        return std::log1p(rho * x) * k * std::pow(y, k - 1) * std::exp(-x);
    };
    return integrate_half_line(integrand);
}

double bernoulli_pattern_se(int b, double p, double rho)
{
    if (b < 1 || b > 20) throw std::domain_error("bernoulli_pattern_se: B must lie in [1, 20]");
    double se = 0.0;
    for (unsigned pattern = 0; pattern < (1u << b); ++pattern) {
        const int occupied = std::popcount(pattern);
        const double probability = std::pow(p, occupied) * std::pow(1.0 - p, b - occupied);
        se += probability * log_capacity_of_exponential_max(occupied, rho);
    }
    return se;
}

} // namespace beamsim::oracle
