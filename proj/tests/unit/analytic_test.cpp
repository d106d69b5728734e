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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "beamsim/analytic.hpp"
#include "beamsim/beam.hpp"
#include "beamsim/channel.hpp"
#include "beamsim/errors.hpp"
#include "beamsim_validation/oracles.hpp"

namespace beamsim {
namespace {

using namespace analytic;

double paper_rho(double lambda0, std::int64_t b)
{
    return snr_scale(LinkBudget::from_reference_snr(0.01, lambda0), BeamGrid::from_pair_count(b)).rho;
}

// Independent evaluation of the integral form of the Nakagami bound for
// integer shape n: int ln(1 + rho x) d[(1 - p + p (1 - e^{-a x})^n)^B].
double bound_by_quadrature(double p, std::int64_t b, double n, double rho)
{
    const double a = n * std::exp(-std::lgamma(n + 1.0) / n);
    auto integrand = [=](double x) {
        const double y = -std::expm1(-a * x);
        const double density = n * a * p * b * std::pow(y, n - 1.0) *
                                std::pow(1.0 - p * (1.0 - std::pow(y, n)), b - 1.0) * std::exp(-a * x);
        return std::log1p(rho * x) * density;
    };
    return oracle::integrate_half_line(integrand);
}

TEST(BernoulliP, Examples)
{
    const double p = bernoulli_p(1.9, 121);
    EXPECT_NEAR(p, -std::expm1(-1.9 / 121.0), 1e-16);
    EXPECT_NEAR(p, 0.0155803, 1e-6);
    EXPECT_NEAR(std::pow(1.0 - p, 121), std::exp(-1.9), 1e-14);
    EXPECT_LT(bernoulli_p(1e-300, 10), 1e-299);
    EXPECT_THROW(bernoulli_p(-1.0, 10), DomainError);
    EXPECT_THROW(bernoulli_p(1.0, 0), DomainError);
}

TEST(SparseModel, IdentityHolds)
{
    for (double lambda0 : {0.1, 1.9, 3.5}) {
        for (std::int64_t b : {1, 121, 625, 100000}) {
            const auto model = SparseModel::from_sparsity(lambda0, b, 1.0);
            EXPECT_NEAR(model.empty_probability(), std::exp(-lambda0), 1e-14);
        }
    }
    const auto from_p = SparseModel::from_probability(0.0156, 121, 3.0);
    EXPECT_NEAR(from_p.empty_probability(), std::exp(-from_p.lambda0), 1e-14);
}

TEST(OptPowerCdf, Examples)
{
    const auto model = SparseModel::from_sparsity(1.9, 121, 3.2);
    EXPECT_EQ(opt_power_cdf(0.0, model), 0.0);
    EXPECT_NEAR(opt_power_cdf(1e3, model), 1.0, 1e-15);

    const auto two = SparseModel::from_probability(0.5, 2, 1.0);
    EXPECT_NEAR(opt_power_cdf(std::log(2.0), two), 0.25 * 1.25 / 0.75, 1e-14);
    // Brute force over the four occupancy patterns of two pairs, exponential powers.
    const double q = 0.5;
    const double brute = (2 * 0.25 * q + 0.25 * q * q) / 0.75;
    EXPECT_NEAR(opt_power_cdf(std::log(2.0), two), brute, 1e-14);
}

TEST(OptPowerCdf, MonotoneWithEndpoints)
{
    for (double m : {0.5, 1.0, 3.2}) {
        const auto model = SparseModel::from_sparsity(1.9, 121, m);
        double previous = 0.0;
        for (double x = 0.0; x <= 40.0; x += 0.05) {
            const double f = opt_power_cdf(x, model);
            ASSERT_GE(f, previous);
            ASSERT_LE(f, 1.0);
            previous = f;
        }
        EXPECT_NEAR(previous, 1.0, 1e-9);
    }
}

TEST(OptPowerPdf, ExactDensityIsDerivativeOfCdf)
{
    const auto model = SparseModel::from_sparsity(1.9, 121, 3.2);
    for (double x = 0.1; x < 8.0; x += 0.3) {
        const double h = 1e-5;
        const double numeric = (opt_power_cdf(x + h, model) - opt_power_cdf(x - h, model)) / (2.0 * h);
        EXPECT_NEAR(opt_power_pdf_exact(x, model), numeric, 1e-7) << "x=" << x;
    }
}

TEST(OptPowerPdfBound, RayleighReduction)
{
    const auto model = SparseModel::from_probability(0.0156, 121, 1.0);
    EXPECT_DOUBLE_EQ(alzer_rate(1.0), 1.0);
    const double p = model.p;
    const double scale = p * 121 / (1.0 - std::pow(1.0 - p, 121));
    for (double x : {0.0, 0.3, 1.0, 4.0, 12.0}) {
        const double expected = scale * std::pow(1.0 - p * std::exp(-x), 120) * std::exp(-x);
        EXPECT_NEAR(opt_power_pdf_bound(x, model), expected, 1e-13 * expected);
    }
}

TEST(OptPowerPdfBound, ZeroAtOriginForShapeAboveOne)
{
    EXPECT_EQ(opt_power_pdf_bound(0.0, SparseModel::from_probability(0.0156, 121, 3.0)), 0.0);
}

TEST(OptPowerPdfBound, NormalizedOnFiniteWindow)
{
    const auto model = SparseModel::from_probability(0.0156, 121, 3.0);
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double mass = integrator.integrate([&](double x) { return opt_power_pdf_bound(x, model); }, 0.0, 200.0);
    EXPECT_NEAR(mass, 1.0, 1e-6);
}

TEST(OptPowerPdfBound, NormalizedOverTestGrid)
{
    for (double p : {0.003, 0.0156, 0.1}) {
        for (std::int64_t b : {1, 16, 121, 625}) {
            for (double m : {1.0, 2.0, 3.0, 3.2}) {
                const auto model = SparseModel::from_probability(p, b, m);
                const double mass = oracle::integrate_half_line([&](double x) { return opt_power_pdf_bound(x, model); });
                EXPECT_NEAR(mass, 1.0, 1e-6) << "p=" << p << " B=" << b << " m=" << m;
            }
        }
    }
}

TEST(SeUpperNakagami, RayleighClosedFormMatchesQuadrature)
{
    for (std::int64_t b : {16, 121, 625}) {
        for (double lambda0 : {0.5, 1.9, 3.5}) {
            const auto model = SparseModel::from_sparsity(lambda0, b, 1.0);
            const double rho = paper_rho(lambda0, b);
            const auto bound = se_upper_nakagami(model, rho);
            // At lambda0 = 3.5 the outer sum reaches i ~ 20 and the inner sums may not certify.
            if (lambda0 <= 1.9) EXPECT_EQ(bound.path, EvaluationPath::closed_form) << "B=" << b;
            EXPECT_NEAR(bound.value / bound_by_quadrature(model.p, b, 1.0, rho), 1.0, 1e-8);
        }
    }
}

TEST(SeUpperNakagami, ClosedFormAgreesWithQuadraturePath)
{
    for (double m : {2.0, 3.2, 5.0}) {
        for (std::int64_t b : {121, 625}) {
            const auto model = SparseModel::from_sparsity(1.9, b, m);
            const double rho = paper_rho(1.9, b);
            const auto bound = se_upper_nakagami(model, rho);
            const double quadrature = se_upper_nakagami_quadrature(model, rho);
            if (bound.path == EvaluationPath::closed_form) {
                EXPECT_NEAR(bound.value / quadrature, 1.0, 1e-6) << "m=" << m << " B=" << b;
            }
            EXPECT_NEAR(quadrature / bound_by_quadrature(model.p, b, std::floor(m), rho), 1.0, 1e-9);
        }
    }
}

TEST(SeUpperNakagami, LargeShapeFallsBackToQuadrature)
{
    // n = m_hat * i grows past the point where the alternating sum can be certified.
    const auto model = SparseModel::from_sparsity(3.5, 625, 40.0);
    const double rho = paper_rho(3.5, 625);
    const auto bound = se_upper_nakagami(model, rho);
    EXPECT_EQ(bound.path, EvaluationPath::quadrature);
    EXPECT_NEAR(bound.value / bound_by_quadrature(model.p, 625, 40.0, rho), 1.0, 1e-8);
}

TEST(SeUpperNakagami, SubUnitShapeUsesQuadrature)
{
    const auto model = SparseModel::from_sparsity(1.9, 121, 0.7);
    const auto bound = se_upper_nakagami(model, 0.6);
    EXPECT_EQ(bound.path, EvaluationPath::quadrature);
    EXPECT_GT(bound.value, 0.0);
}

TEST(SeUpperNakagami, VanishesWithRho)
{
    const auto model = SparseModel::from_sparsity(1.9, 121, 3.2);
    EXPECT_LT(se_upper_nakagami(model, 1e-9).value, 1e-8);
    EXPECT_THROW(se_upper_nakagami(model, 0.0), DomainError);
}

TEST(SeUpperRayleigh, MatchesFormula)
{
    const auto model = SparseModel::from_sparsity(1.25, 625, 1.0);
    const double rho = paper_rho(1.25, 625);
    const double e1 = std::exp(1.0 / rho) * oracle::exp_integral_e1_quadrature(1.0 / rho);
    const double e2 = std::exp(2.0 / rho) * oracle::exp_integral_e1_quadrature(2.0 / rho);
    const double expected = model.p * 625 * (e1 - 0.5 * (1.0 - std::exp(-1.25)) * e2);
    EXPECT_NEAR(se_upper_rayleigh(model, rho), expected, 1e-12 * expected);
}

TEST(SeUpperRayleigh, LogarithmicGrowth)
{
    const auto model = SparseModel::from_sparsity(1.9, 121, 1.0);
    const double slope = model.p * 121 * (1.0 - 0.5 * (1.0 - std::exp(-1.9)));
    const double r1 = 1e6;
    const double r2 = 1e8;
    const double growth = (se_upper_rayleigh(model, r2) - se_upper_rayleigh(model, r1)) / std::log(r2 / r1);
    EXPECT_NEAR(growth / slope, 1.0, 1e-4);
}

TEST(SeUpperRayleigh, BelowSparseChain)
{
    for (double lambda0 : {0.1, 1.0, 1.9, 3.5}) {
        for (std::int64_t b : {100, 121, 625, 1000}) {
            const auto model = SparseModel::from_sparsity(lambda0, b, 1.0);
            for (double rho : {0.01, 0.6, 3.0, 100.0}) {
                EXPECT_LE(se_upper_rayleigh(model, rho), model.p * b * std::log1p(rho));
            }
        }
    }
}

TEST(SeLower, Examples)
{
    const auto model = SparseModel::from_sparsity(1.9, 121, 1.0);
    EXPECT_NEAR(se_lower(model, 0.636842), (1.0 - std::exp(-1.9)) * std::log(1.636842), 1e-14);
    EXPECT_NEAR(se_lower(model, 0.636842), 0.41907, 5e-6);
    EXPECT_EQ(se_lower(SparseModel{0.0, 121, 1.0, 0.0}, 0.5), 0.0);
    const auto wide = SparseModel::from_sparsity(1.9, 100000000, 1.0);
    EXPECT_NEAR(se_lower(wide, 0.5), (1.0 - std::exp(-1.9)) * std::log1p(0.5), 1e-14);
}

TEST(SeSparseApprox, Examples)
{
    EXPECT_EQ(se_sparse_approx(0.0, 1.0).value, 0.0);
    const auto loose = se_sparse_approx(1.9, 0.6368);
    EXPECT_NEAR(loose.value, 1.9 * std::log1p(0.6368), 1e-15);
    EXPECT_NEAR(loose.value, 0.93626, 5e-5);
    EXPECT_FALSE(loose.sparse_regime);
    EXPECT_GT(loose.value, se_lower(SparseModel::from_sparsity(1.9, 121, 1.0), 0.6368));
}

TEST(SeSparseApprox, EnvelopesBothBoundsAtSmallLambda0)
{
    const auto model = SparseModel::from_sparsity(0.1, 10000, 1.0);
    const auto sparse = se_sparse_approx(0.1, 1.0);
    const double lower = se_lower(model, 1.0);
    const double upper = se_upper_rayleigh(model, 1.0);
    EXPECT_TRUE(sparse.sparse_regime);
    EXPECT_GE(sparse.value, lower);
    EXPECT_GE(sparse.value, upper);
    EXPECT_LE((sparse.value - lower) / lower, 0.06);
}

TEST(BoundOrdering, AcrossParameterGrid)
{
    for (double lambda0 = 1.0; lambda0 <= 3.5; lambda0 += 0.25) {
        for (std::int64_t b : {100, 121, 625, 1000, 1024}) {
            const double rho = paper_rho(lambda0, b);
            const auto rayleigh = SparseModel::from_sparsity(lambda0, b, 1.0);
            const auto nakagami = SparseModel::from_sparsity(lambda0, b, 3.2);
            EXPECT_LE(se_lower(rayleigh, rho), se_upper_rayleigh(rayleigh, rho)) << lambda0 << " " << b;
            EXPECT_LE(se_lower(nakagami, rho), se_upper_nakagami(nakagami, rho).value) << lambda0 << " " << b;
        }
    }
}

TEST(BoundOrdering, LowerFormulaExceedsExactSeWhenPathsAreRare)
{
    // With m = 1 the Nakagami bound is exact for the Bernoulli model. When at
    // most one path is likely, E ln(1 + rho X) < ln(1 + rho) for X ~ Exp(1),
    // so the [1 - (1 - p)^B] ln(1 + rho) expression sits above the exact SE.
    for (double lambda0 : {0.1, 0.5, 1.0}) {
        const auto model = SparseModel::from_sparsity(lambda0, 625, 1.0);
        const double exact = se_bernoulli_exact(model, 3.0);
        EXPECT_NEAR(se_upper_nakagami(model, 3.0).value / exact, 1.0, 1e-8);
        EXPECT_GT(se_lower(model, 3.0), exact);
    }
    const auto dense = SparseModel::from_sparsity(1.9, 625, 1.0);
    EXPECT_LT(se_lower(dense, 3.0), se_bernoulli_exact(dense, 3.0));
}

TEST(BoundOrdering, NondecreasingInRho)
{
    const auto model = SparseModel::from_sparsity(1.9, 121, 3.2);
    const auto rayleigh = SparseModel::from_sparsity(1.9, 121, 1.0);
    double previous[5] = {0, 0, 0, 0, 0};
    for (double rho = 0.05; rho < 50.0; rho *= 1.25) {
        const double values[5] = {se_upper_nakagami(model, rho).value, se_upper_rayleigh(rayleigh, rho),
                                  se_lower(model, rho), se_sparse_approx(1.9, rho).value,
                                  se_bernoulli_exact(model, rho)};
        for (int k = 0; k < 5; ++k) {
            ASSERT_GE(values[k], previous[k]) << "quantity " << k << " rho " << rho;
            previous[k] = values[k];
        }
    }
}

TEST(SeBernoulliExact, MatchesPatternEnumeration)
{
    for (int b : {1, 2, 3}) {
        for (double p : {0.2, 0.5}) {
            for (double rho : {0.3, 2.0, 30.0}) {
                EXPECT_NEAR(se_bernoulli_exact(SparseModel::from_probability(p, b, 1.0), rho),
                            oracle::bernoulli_pattern_se(b, p, rho), 1e-6);
            }
        }
    }
}

TEST(SeBernoulliExact, LiesBetweenBounds)
{
    for (std::int64_t b : {121, 625}) {
        const auto model = SparseModel::from_sparsity(1.9, b, 3.2);
        const double rho = paper_rho(1.9, b);
        const double exact = se_bernoulli_exact(model, rho);
        EXPECT_GE(exact, se_lower(model, rho));
        EXPECT_LE(exact, se_upper_nakagami(model, rho).value * (1.0 + 1e-12));
    }
}

TEST(SnrScale, Examples)
{
    const auto link = LinkBudget::from_reference_snr(0.01, 1.9);
    const auto scale = snr_scale(link, BeamGrid::from_pair_count(121));
    EXPECT_NEAR(scale.k, 0.0052632, 1e-7);
    EXPECT_NEAR(scale.rho, 0.636842, 1e-6);
    EXPECT_NEAR(scale.rho, 121 * scale.k, 1e-15);

    const auto omni = snr_scale(link, BeamGrid::from_pair_count(1));
    EXPECT_DOUBLE_EQ(omni.rho, omni.k);

    const auto doubled = snr_scale(link, BeamGrid::from_counts(22, 11));
    EXPECT_NEAR(doubled.rho, 2.0 * scale.rho, 1e-15);
    EXPECT_DOUBLE_EQ(doubled.k, scale.k);
}

} // namespace
} // namespace beamsim
