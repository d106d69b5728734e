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

#include "beamsim/beam.hpp"
#include "beamsim/channel.hpp"

#include <cstdint>

namespace beamsim {

//---------------------------------------------------------------------------//
/*!
 * Bernoulli sparsity model of the beamformed channel.
 *
 * Each of the B beam pairs holds at most one path, present with probability
 * p = 1 - exp(-lambda0 / B), so (1 - p)^B = exp(-lambda0). The path's
 * normalized power is Gamma(m, 1/m).
 */
struct SparseModel
{
    double p = 0.0;
    std::int64_t b = 1;
    double m = 1.0;
    double lambda0 = 0.0;

    /// p from (lambda0, B).
    static SparseModel from_sparsity(double lambda0, std::int64_t b, double m);

    /// lambda0 = -B ln(1 - p), so the (1 - p)^B = exp(-lambda0) identity still holds.
    static SparseModel from_probability(double p, std::int64_t b, double m);

    /// (1 - p)^B, the probability that every pair is empty.
    double empty_probability() const;
};

/// rho = lambda0^-1 G_t G_r c d^-alpha / sigma^2 and the per-beam scale
/// k = lambda0^-1 c d^-alpha / sigma^2.
struct SnrScale
{
    double rho = 0.0;
    double k = 0.0;
};

enum class EvaluationPath
{
    closed_form,
    quadrature,
};

const char* to_string(EvaluationPath path);

struct BoundEvaluation
{
    double value = 0.0; // nats per channel use
    EvaluationPath path = EvaluationPath::closed_form;
    /// Outer binomial terms kept before the tail weight fell below 1e-12 (closed form only).
    std::int64_t outer_terms = 0;
    /// Largest relative gap between an inner alternating sum and its quadrature check.
    double max_inner_discrepancy = 0.0;
};

namespace analytic {

inline constexpr double outer_tail_weight = 1e-12;
inline constexpr double inner_certification_tol = 1e-9;

/// p = 1 - exp(-lambda0 / B).
double bernoulli_p(double lambda0, std::int64_t b);

/// a = m Gamma(m + 1)^(-1/m), the rate of the (1 - e^{-a x})^m approximation to P(m, m x).
double alzer_rate(double m);

/// CDF of the normalized optimal power conditioned on at least one occupied
/// pair, with the exact regularized gamma.
double opt_power_cdf(double p_star, const SparseModel& model);

/// Density of opt_power_cdf.
double opt_power_pdf_exact(double p_star, const SparseModel& model);

/// Density obtained by replacing P(m, m x) with (1 - e^{-a x})^m.
double opt_power_pdf_bound(double p_star, const SparseModel& model);

/// Upper bound under Nakagami-m fading with m replaced by floor(m).
///
/// The closed form is a binomial mixture of alternating sums of
/// e^s E1(s) terms. Outer terms are truncated once the remaining binomial
/// weight drops below outer_tail_weight. Every inner sum is compared with a
/// quadrature of the same term; if any disagrees by more than
/// inner_certification_tol the whole bound is recomputed by quadrature of
/// the integral form, and `path` says which route produced `value`.
/// For m in [0.5, 1) only the quadrature route exists and uses m unchanged.
BoundEvaluation se_upper_nakagami(const SparseModel& model, double rho);

/// The integral form of the Nakagami bound evaluated by quadrature
/// (shape floor(m) for m >= 1, m itself below 1).
double se_upper_nakagami_quadrature(const SparseModel& model, double rho);

/// pB [e^{1/rho} E1(1/rho) - (1 - e^{-lambda0}) / 2 e^{2/rho} E1(2/rho)].
double se_upper_rayleigh(const SparseModel& model, double rho);

/// [1 - (1 - p)^B] ln(1 + rho).
double se_lower(const SparseModel& model, double rho);

struct SparseApproximation
{
    double value = 0.0;
    /// lambda0 <= sparse_regime_limit, where 1 - e^{-lambda0} is within 10% of lambda0.
    bool sparse_regime = false;
};

inline constexpr double sparse_regime_limit = 0.2;

/// lambda0 ln(1 + rho), the common small-lambda0 envelope of both bounds.
SparseApproximation se_sparse_approx(double lambda0, double rho);

/// SE of the Bernoulli model with exact Gamma fading, by quadrature of the
/// mixed density (no approximation beyond the at-most-one-path-per-pair model).
double se_bernoulli_exact(const SparseModel& model, double rho);

SnrScale snr_scale(const LinkBudget& link, const BeamGrid& grid);

} // namespace analytic
} // namespace beamsim
