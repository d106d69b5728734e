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

// Adaptive quadrature used by the analytic and throughput modules.

#include "beamsim/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace beamsim::detail {

struct QuadratureOptions
{
    double rel_tol = 1e-13;
    unsigned max_depth = 30;
    // Accept the result when the error estimate is below accept_tol * L1 norm.
    double accept_tol = 1e-9;
};

template <class F>
double integrate_interval(F&& f, double a, double b, const char* op, QuadratureOptions opts = {})
{
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, opts.max_depth, opts.rel_tol, &error, &l1);
    if (!std::isfinite(value) || error > opts.accept_tol * std::max(l1, std::numeric_limits<double>::min())) {
        throw NumericalError(op, "adaptive quadrature did not converge (estimate " + std::to_string(value) +
                                     ", error " + std::to_string(error) + ")");
    }
    return value;
}

/// Integral over [0, inf), split at `split`. With `endpoint_singular` the
/// first piece uses tanh-sinh, which tolerates integrable singularities at 0.
template <class F>
double integrate_half_line(F&& f, double split, const char* op, bool endpoint_singular = false,
                           QuadratureOptions opts = {})
{
    double head = 0.0;
    if (endpoint_singular) {
        boost::math::quadrature::tanh_sinh<double> integrator;
        double error = 0.0;
        double l1 = 0.0;
        head = integrator.integrate(f, 0.0, split, opts.rel_tol, &error, &l1);
        if (!std::isfinite(head) || error > opts.accept_tol * std::max(l1, std::numeric_limits<double>::min())) {
            throw NumericalError(op, "tanh-sinh quadrature did not converge near the origin");
        }
    }
    else {
        head = integrate_interval(f, 0.0, split, op, opts);
    }
    const double tail = integrate_interval(f, split, std::numeric_limits<double>::infinity(), op, opts);
    return head + tail;
}

} // namespace beamsim::detail
