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

#include "beamsim/analytic.hpp"

#include "beamsim/errors.hpp"
#include "beamsim/specfun.hpp"
#include "detail/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace beamsim {

const char* to_string(EvaluationPath path)
{
    switch (path) {
    case EvaluationPath::closed_form: return "closed_form";
    case EvaluationPath::quadrature: return "quadrature";
    }
    return "unknown";
}

SparseModel SparseModel::from_sparsity(double lambda0, std::int64_t b, double m)
{
    SparseModel model;
    model.p = analytic::bernoulli_p(lambda0, b);
    model.b = b;
    model.m = m;
    model.lambda0 = lambda0;
    return model;
}

SparseModel SparseModel::from_probability(double p, std::int64_t b, double m)
{
    if (!(p >= 0.0 && p < 1.0)) {
        throw DomainError("SparseModel", "p must lie in [0, 1), got " + std::to_string(p));
    }
    if (b < 1) throw DomainError("SparseModel", "B must be at least 1");
    SparseModel model;
    model.p = p;
    model.b = b;
    model.m = m;
    model.lambda0 = -static_cast<double>(b) * std::log1p(-p);
    return model;
}

double SparseModel::empty_probability() const
{
    return std::exp(static_cast<double>(b) * std::log1p(-p));
}

namespace analytic {

namespace {

void check_model(const char* op, const SparseModel& model, bool allow_empty = false)
{
    const bool p_ok = allow_empty ? (model.p >= 0.0 && model.p < 1.0) : (model.p > 0.0 && model.p < 1.0);
    if (!p_ok) {
        std::ostringstream os;
        os << "Bernoulli probability p must lie in " << (allow_empty ? "[0, 1)" : "(0, 1)") << ", got " << model.p;
        throw DomainError(op, os.str());
    }
    if (model.b < 1) throw DomainError(op, "B must be at least 1, got " + std::to_string(model.b));
    if (!(model.m >= 0.5) || !std::isfinite(model.m)) {
        throw DomainError(op, "Nakagami shape m must be >= 0.5, got " + std::to_string(model.m));
    }
}

void check_rho(const char* op, double rho)
{
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw DomainError(op, "SNR scale rho must be positive and finite, got " + std::to_string(rho));
    }
}

void check_p_star(const char* op, double p_star)
{
    if (!(p_star >= 0.0)) throw DomainError(op, "p_star must be nonnegative, got " + std::to_string(p_star));
}

/// 1 - (1 - p)^B.
double occupied_probability(const SparseModel& model)
{
    return -std::expm1(static_cast<double>(model.b) * std::log1p(-model.p));
}

/// m a p B y^{m-1} [1 - p (1 - y^m)]^{B-1} e^{-a x} with y = 1 - e^{-a x}:
/// the density of the approximating CDF times 1 - (1 - p)^B.
double bound_kernel(double x, double p, double b, double m, double a)
{
    if (x == 0.0 && m > 1.0) return 0.0;
    const double e = std::exp(-a * x);
    const double y = -std::expm1(-a * x);
    const double one_minus_ym = -std::expm1(m * std::log1p(-e));
    const double mixture = std::exp((b - 1.0) * std::log1p(-p * one_minus_ym));
    return m * a * p * b * std::pow(y, m - 1.0) * mixture * e;
}

/// B p [1 - p Q(m, m x)]^{B-1} f_Gamma(x): exact density times 1 - (1 - p)^B.
double exact_kernel(double x, double p, double b, double m)
{
    if (x == 0.0) {
        if (m > 1.0) return 0.0;
        if (m < 1.0) return std::numeric_limits<double>::infinity();
    }
    const double q = specfun::reg_upper_gamma(m, m * x);
    const double mixture = std::exp((b - 1.0) * std::log1p(-p * q));
    const double gamma_pdf = std::exp(m * std::log(m) + (m - 1.0) * std::log(x) - m * x - specfun::ln_gamma(m));
    return b * p * mixture * gamma_pdf;
}

double bulk_split(const SparseModel& model, double rate)
{
    return (1.0 + std::log1p(model.p * static_cast<double>(model.b))) / rate;
}

/// Shape used by the Nakagami bound: floor(m) for m >= 1, m itself below 1.
double bound_shape(double m)
{
    return m >= 1.0 ? std::floor(m) : m;
}

// Term of the closed form for i occupied pairs: int ln(1 + rho x) d[(1 - e^{-a x})^n]
// expanded as an alternating sum over e^s E1(s). Returns the sum and the
// ratio sum|terms| / |sum| that bounds its cancellation.
struct InnerSum
{
    double value = 0.0;
    double cancellation = 1.0;
};

InnerSum inner_alternating_sum(std::int64_t n, double a, double rho)
{
    // Neumaier compensated summation.
    double sum = 0.0;
    double comp = 0.0;
    double abs_sum = 0.0;
    double binom = 1.0; // C(n - 1, j)
    for (std::int64_t j = 0; j < n; ++j) {
        const double s = a * static_cast<double>(1 + j);
        double term = binom * specfun::scaled_exp_integral_e1(s / rho) / s;
        if (j % 2 == 1) term = -term;
        abs_sum += std::abs(term);
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) comp += (sum - t) + term;
        else comp += (term - t) + sum;
        sum = t;
        binom = binom * static_cast<double>(n - 1 - j) / static_cast<double>(j + 1);
    }
    InnerSum out;
    out.value = a * static_cast<double>(n) * (sum + comp);
    out.cancellation = out.value != 0.0 ? a * static_cast<double>(n) * abs_sum / std::abs(out.value)
                                        : std::numeric_limits<double>::infinity();
    return out;
}

double inner_quadrature(std::int64_t n, double a, double rho)
{
    const double nd = static_cast<double>(n);
    auto integrand = [=](double x) {
        const double y = -std::expm1(-a * x);
        return std::log1p(rho * x) * nd * a * std::pow(y, nd - 1.0) * std::exp(-a * x);
    };
    return detail::integrate_half_line(integrand, (1.0 + std::log(nd)) / a, "se_upper_nakagami");
}

} // namespace

double bernoulli_p(double lambda0, std::int64_t b)
{
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
        throw DomainError("bernoulli_p", "lambda0 must be positive, got " + std::to_string(lambda0));
    }
    if (b < 1) throw DomainError("bernoulli_p", "B must be at least 1, got " + std::to_string(b));
    return -std::expm1(-lambda0 / static_cast<double>(b));
}

double alzer_rate(double m)
{
    if (!(m > 0.0)) throw DomainError("alzer_rate", "shape must be positive");
    return m * std::exp(-specfun::ln_gamma(m + 1.0) / m);
}

double opt_power_cdf(double p_star, const SparseModel& model)
{
    check_model("opt_power_cdf", model);
    check_p_star("opt_power_cdf", p_star);
    if (p_star == 0.0) return 0.0;
    const double b = static_cast<double>(model.b);
    const double q = std::isinf(p_star) ? 0.0 : specfun::reg_upper_gamma(model.m, model.m * p_star);
    // (1-p)^B ([1 + p/(1-p) P]^B - 1) = (1 - p Q)^B - (1 - p)^B
    const double log_full = b * std::log1p(-model.p * q);
    const double log_empty = b * std::log1p(-model.p);
    const double value = (std::exp(log_full) - std::exp(log_empty)) / -std::expm1(log_empty);
    return std::clamp(value, 0.0, 1.0);
}

double opt_power_pdf_exact(double p_star, const SparseModel& model)
{
    check_model("opt_power_pdf_exact", model);
    check_p_star("opt_power_pdf_exact", p_star);
    return exact_kernel(p_star, model.p, static_cast<double>(model.b), model.m) / occupied_probability(model);
}

double opt_power_pdf_bound(double p_star, const SparseModel& model)
{
    check_model("opt_power_pdf_bound", model);
    check_p_star("opt_power_pdf_bound", p_star);
    const double a = alzer_rate(model.m);
    return bound_kernel(p_star, model.p, static_cast<double>(model.b), model.m, a) / occupied_probability(model);
}

double se_upper_nakagami_quadrature(const SparseModel& model, double rho)
{
    check_model("se_upper_nakagami", model);
    check_rho("se_upper_nakagami", rho);
    const double m = bound_shape(model.m);
    const double a = alzer_rate(m);
    const double p = model.p;
    const double b = static_cast<double>(model.b);
    auto integrand = [=](double x) { return std::log1p(rho * x) * bound_kernel(x, p, b, m, a); };
    return detail::integrate_half_line(integrand, bulk_split(model, a), "se_upper_nakagami", m < 1.0);
}

BoundEvaluation se_upper_nakagami(const SparseModel& model, double rho)
{
    check_model("se_upper_nakagami", model);
    check_rho("se_upper_nakagami", rho);

    BoundEvaluation result;
    if (model.m < 1.0) {
        result.value = se_upper_nakagami_quadrature(model, rho);
        result.path = EvaluationPath::quadrature;
        return result;
    }

    const auto m_hat = static_cast<std::int64_t>(std::floor(model.m));
    const double a_hat = alzer_rate(static_cast<double>(m_hat));
    const double b = static_cast<double>(model.b);
    const double log_odds = std::log(model.p) - std::log1p(-model.p);

    // Binomial(B, p) weights by log-recurrence; Neumaier sums for the total and the mixed value.
    double log_w = b * std::log1p(-model.p);
    double mass = std::exp(log_w);
    double mass_comp = 0.0;
    double value = 0.0;
    bool certified = true;

    for (std::int64_t i = 1; i <= model.b; ++i) {
        log_w += std::log((b - static_cast<double>(i) + 1.0) / static_cast<double>(i)) + log_odds;
        const double w = std::exp(log_w);

        const std::int64_t n = m_hat * i;
        const InnerSum inner = inner_alternating_sum(n, a_hat, rho);
        if (inner.cancellation * 64.0 * std::numeric_limits<double>::epsilon() > inner_certification_tol) {
            certified = false;
            result.max_inner_discrepancy = std::numeric_limits<double>::infinity();
            result.outer_terms = i;
            break;
        }
        const double check = inner_quadrature(n, a_hat, rho);
        const double gap = std::abs(inner.value - check) / std::max(std::abs(check), 1e-300);
        result.max_inner_discrepancy = std::max(result.max_inner_discrepancy, gap);
        if (gap > inner_certification_tol) {
            certified = false;
            result.outer_terms = i;
            break;
        }
        value += w * inner.value;

        const double t = mass + w;
        mass_comp += std::abs(mass) >= std::abs(w) ? (mass - t) + w : (w - t) + mass;
        mass = t;
        result.outer_terms = i;
        if (1.0 - (mass + mass_comp) < outer_tail_weight) break;
    }

    if (certified) {
        result.value = value;
        result.path = EvaluationPath::closed_form;
    }
    else {
        result.value = se_upper_nakagami_quadrature(model, rho);
        result.path = EvaluationPath::quadrature;
    }
    return result;
}

double se_upper_rayleigh(const SparseModel& model, double rho)
{
    check_model("se_upper_rayleigh", model);
    check_rho("se_upper_rayleigh", rho);
    const double occupied = occupied_probability(model); // 1 - e^{-lambda0}
    const double pb = model.p * static_cast<double>(model.b);
    return pb * (specfun::scaled_exp_integral_e1(1.0 / rho) -
                 0.5 * occupied * specfun::scaled_exp_integral_e1(2.0 / rho));
}

double se_lower(const SparseModel& model, double rho)
{
    check_model("se_lower", model, true);
    check_rho("se_lower", rho);
    if (model.p == 0.0) return 0.0;
    return occupied_probability(model) * std::log1p(rho);
}

SparseApproximation se_sparse_approx(double lambda0, double rho)
{
    if (!(lambda0 >= 0.0) || !std::isfinite(lambda0)) {
        throw DomainError("se_sparse_approx", "lambda0 must be nonnegative, got " + std::to_string(lambda0));
    }
    check_rho("se_sparse_approx", rho);
    return {lambda0 * std::log1p(rho), lambda0 <= sparse_regime_limit};
}

double se_bernoulli_exact(const SparseModel& model, double rho)
{
    check_model("se_bernoulli_exact", model);
    check_rho("se_bernoulli_exact", rho);
    const double p = model.p;
    const double b = static_cast<double>(model.b);
    const double m = model.m;
    auto integrand = [=](double x) { return std::log1p(rho * x) * exact_kernel(x, p, b, m); };
    return detail::integrate_half_line(integrand, bulk_split(model, 1.0), "se_bernoulli_exact", m < 1.0);
}

SnrScale snr_scale(const LinkBudget& link, const BeamGrid& grid)
{
    link.validate();
    SnrScale scale;
    scale.k = link.reference_snr() / link.lambda0;
    scale.rho = scale.k * grid.gain_t * grid.gain_r;
    return scale;
}

} // namespace analytic
} // namespace beamsim
