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

#include "beamsim/specfun.hpp"

#include "beamsim/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace beamsim::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double tiny = std::numeric_limits<double>::min() / eps;

// Lanczos coefficients for g = 671/128, 14 terms.
constexpr std::array<double, 14> lanczos_coef = {
    57.1562356658629235,     -59.5979603554754912,     14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,   .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,   -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3,  .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

[[noreturn]] void not_converged(const char* op, double a, double x)
{
    throw NumericalError(op, "expansion did not converge within " + std::to_string(max_iterations) +
                                 " terms (a=" + std::to_string(a) + ", x=" + std::to_string(x) + ")");
}

// Power series for P(m, x); valid and fast for x < m + 1.
double lower_gamma_series(double m, double x)
{
    double ap = m;
    double term = 1.0 / m;
    double sum = term;
    for (int n = 0; n < max_iterations; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * eps) {
            return sum * std::exp(-x + m * std::log(x) - ln_gamma(m));
        }
    }
    not_converged("reg_lower_gamma", m, x);
}

// Continued fraction for Q(m, x) (modified Lentz); valid for x >= m + 1.
double upper_gamma_fraction(double m, double x)
{
    double b = x + 1.0 - m;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iterations; ++i) {
        const double an = -i * (i - m);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= eps) {
            return std::exp(-x + m * std::log(x) - ln_gamma(m)) * h;
        }
    }
    not_converged("reg_upper_gamma", m, x);
}

void check_gamma_args(const char* op, double m, double x)
{
    if (!(m > 0.0)) throw DomainError(op, "shape must be positive, got " + std::to_string(m));
    if (!(x >= 0.0)) throw DomainError(op, "argument must be nonnegative, got " + std::to_string(x));
}

// Series -gamma - ln x - sum_{k>=1} (-x)^k / (k k!) for 0 < x <= 1.
double e1_series(double x)
{
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k <= max_iterations; ++k) {
        term *= -x / k;
        const double del = term / k;
        sum += del;
        if (std::abs(del) < std::abs(sum) * eps) {
            return -euler_gamma - std::log(x) - sum;
        }
    }
    not_converged("exp_integral_e1", 1.0, x);
}

// Continued fraction for e^x E1(x), x > 1.
double scaled_e1_fraction(double x)
{
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iterations; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= eps) return h;
    }
    not_converged("exp_integral_e1", 1.0, x);
}

void check_e1_arg(double x)
{
    if (!(x > 0.0)) throw DomainError("exp_integral_e1", "argument must be positive, got " + std::to_string(x));
}

} // namespace

double ln_gamma(double x)
{
    if (!(x > 0.0)) throw DomainError("ln_gamma", "argument must be positive, got " + std::to_string(x));
    if (std::isinf(x)) return x;
    double y = x;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (double c : lanczos_coef) ser += c / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

double reg_lower_gamma(double m, double x)
{
    check_gamma_args("reg_lower_gamma", m, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < m + 1.0) return lower_gamma_series(m, x);
    return 1.0 - upper_gamma_fraction(m, x);
}

double reg_upper_gamma(double m, double x)
{
    check_gamma_args("reg_upper_gamma", m, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < m + 1.0) return 1.0 - lower_gamma_series(m, x);
    return upper_gamma_fraction(m, x);
}

double exp_integral_e1(double x)
{
    check_e1_arg(x);
    if (x <= 1.0) return e1_series(x);
    return scaled_e1_fraction(x) * std::exp(-x);
}

double scaled_exp_integral_e1(double x)
{
    check_e1_arg(x);
    if (x <= 1.0) return std::exp(x) * e1_series(x);
    if (std::isinf(x)) return 0.0;
    return scaled_e1_fraction(x);
}

} // namespace beamsim::specfun
