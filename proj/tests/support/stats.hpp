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

// Goodness-of-fit helpers for the sampling tests. Chi-square critical values
// come from Boost.Math; KS uses the asymptotic Kolmogorov quantile.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace beamsim::test {

/// One-sample Kolmogorov-Smirnov statistic D_n against `cdf`.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf)
{
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

/// Two-sample KS statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

/// Critical D for a one-sample test of size n at level alpha: sqrt(-ln(alpha / 2) / 2) / sqrt(n).
inline double ks_critical(std::size_t n, double alpha)
{
    return std::sqrt(-0.5 * std::log(0.5 * alpha) / static_cast<double>(n));
}

inline double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha)
{
    const double effective = static_cast<double>(n) * m / (n + m);
    return ks_critical(static_cast<std::size_t>(effective), alpha);
}

/// Pearson chi-square statistic; expected counts are pooled from the tail
/// until each bin expects at least 5.
inline double chi_square_statistic(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected,
                                   int* dof)
{
    double stat = 0.0;
    int bins = 0;
    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        pooled_obs += observed[k];
        pooled_exp += expected[k];
        if (pooled_exp >= 5.0) {
            stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
            ++bins;
            pooled_obs = pooled_exp = 0.0;
        }
    }
    if (pooled_exp > 0.0) {
        stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
        ++bins;
    }
    *dof = bins - 1;
    return stat;
}

inline double chi_square_critical(int dof, double alpha)
{
    boost::math::chi_squared_distribution<double> dist(dof);
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

} // namespace beamsim::test
