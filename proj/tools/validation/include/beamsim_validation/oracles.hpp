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

// Reference computations that do not share code paths with the library:
// direct quadrature of defining integrals, asymptotic series, and
// exhaustive enumeration.

#include <cstdint>

namespace beamsim::oracle {

/// ln Gamma(x) from Stirling's series after shifting x above 20 with the recurrence.
double stirling_ln_gamma(double x);

/// P(m, x) by tanh-sinh quadrature of t^{m-1} e^{-t} / Gamma(m) on [0, x],
/// or of the complement on [x, inf) when x lies past the mode.
double reg_lower_gamma_quadrature(double m, double x);

/// E1(x) by quadrature: -gamma - ln x + int_0^x (1 - e^-t)/t dt for x <= 1,
/// int_x^inf e^-t / t dt otherwise.
double exp_integral_e1_quadrature(double x);

/// Leading terms of -gamma - ln x + x - x^2/4 + x^3/18 - ...
double exp_integral_e1_small_series(double x, int terms = 8);

/// int_0^inf ln(1 + rho x) d[(1 - e^{-x})^k]: expected ln(1 + rho X) for X
/// the maximum of k unit exponentials.
double log_capacity_of_exponential_max(int k, double rho);

/// SE of B Bernoulli(p) pairs with unit exponential powers by enumerating
/// all 2^B occupancy patterns.
double bernoulli_pattern_se(int b, double p, double rho);

/// int_0^inf f by adaptive Gauss-Kronrod, used for normalization checks.
template <class F>
double integrate_half_line(F f);

} // namespace beamsim::oracle

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace beamsim::oracle {

template <class F>
double integrate_half_line(F f)
{
    // Tanh-sinh on [0, 1] picks up any endpoint behaviour; exp-sinh for the tail.
    boost::math::quadrature::tanh_sinh<double> head;
    boost::math::quadrature::exp_sinh<double> tail;
    return head.integrate(f, 0.0, 1.0, 1e-14) + tail.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-14);
}

} // namespace beamsim::oracle
