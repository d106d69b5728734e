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

// Special-function kernel used by the analytic bounds.
//
// Accuracy contracts:
//   ln_gamma          absolute error <= 1e-12 for x in [0.5, 200]
//   reg_lower_gamma   absolute error <= 1e-10 for m in [0.5, 50], x in [0, 500]
//   exp_integral_e1   relative error <= 1e-10 for x in [1e-8, 700]
//
// Every iterative expansion is capped at max_iterations terms and throws
// beamsim::NumericalError instead of returning a partially converged value.

namespace beamsim::specfun {

inline constexpr int max_iterations = 10000;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, with reflection-free shift for x < 0.5).
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(m, x) = gamma(m, x) / Gamma(m).
double reg_lower_gamma(double m, double x);

/// Regularized upper incomplete gamma Q(m, x) = 1 - P(m, x), computed without cancellation.
double reg_upper_gamma(double m, double x);

/// Exponential integral E1(x) = int_x^inf e^-t / t dt. Underflows to zero
/// for x beyond roughly 700.
double exp_integral_e1(double x);

/// e^x * E1(x), evaluated without forming e^x so it stays finite for large x.
double scaled_exp_integral_e1(double x);

} // namespace beamsim::specfun
