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
#include <cstdint>
#include <vector>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <gtest/gtest.h>

#include "beamsim/channel.hpp"
#include "beamsim/errors.hpp"
#include "beamsim/random.hpp"
#include "stats.hpp"

namespace beamsim {
namespace {

TEST(PerBeamIntensity, Examples)
{
    EXPECT_NEAR(per_beam_intensity(1.9, 121), 0.0157025, 1e-7);
    EXPECT_EQ(per_beam_intensity(2.5, 1), 2.5);
    EXPECT_NEAR(per_beam_intensity(3.3, 625), 0.00528, 1e-12);
    EXPECT_DOUBLE_EQ(per_beam_intensity(1.9, 121) * 121, 1.9);
    EXPECT_THROW(per_beam_intensity(0.0, 4), DomainError);
    EXPECT_THROW(per_beam_intensity(1.0, 0), DomainError);
}

TEST(DrawPathCount, MeanMatchesIntensity)
{
    RandomStream rng(11);
    constexpr int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += draw_path_count(0.5, rng);
    EXPECT_NEAR(sum / n, 0.5, 3.0 * std::sqrt(0.5 / n));
}

TEST(DrawPathCount, ZeroClassProbability)
{
    RandomStream rng(12);
    constexpr int n = 1000000;
    constexpr double lambda_d = 0.0157;
    int zeros = 0;
    for (int i = 0; i < n; ++i) zeros += draw_path_count(lambda_d, rng) == 0 ? 1 : 0;
    const double p0 = std::exp(-lambda_d);
    EXPECT_NEAR(static_cast<double>(zeros) / n, p0, 4.0 * std::sqrt(p0 * (1.0 - p0) / n));
}

TEST(DrawPathCount, VanishingIntensityGivesNoPaths)
{
    RandomStream rng(13);
    for (int i = 0; i < 10000; ++i) ASSERT_EQ(draw_path_count(1e-300, rng), 0u);
}

class FadingMean : public ::testing::TestWithParam<FadingModel>
{
};

TEST_P(FadingMean, UnitMeanPower)
{
    RandomStream rng(21);
    constexpr int n = 1000000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = draw_fading_power(GetParam(), rng);
        ASSERT_GE(x, 0.0);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sum_sq / n - mean * mean);
    EXPECT_NEAR(mean, 1.0, 3.0 * sd / std::sqrt(n)) << GetParam().describe();
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, FadingMean,
                         ::testing::Values(FadingModel::rayleigh(), FadingModel::nakagami(0.5),
                                           FadingModel::nakagami(3.2), FadingModel::rician(0.0),
                                           FadingModel::rician(5.0)));

TEST(DrawFadingPower, RayleighMeanWithinExampleTolerance)
{
    RandomStream rng(22);
    constexpr int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += draw_fading_power(FadingModel::rayleigh(), rng);
    EXPECT_NEAR(sum / n, 1.0, 3e-3);
}

TEST(DrawFadingPower, NakagamiVarianceIsInverseShape)
{
    RandomStream rng(23);
    constexpr int n = 1000000;
    constexpr double m = 3.2;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = draw_fading_power(FadingModel::nakagami(m), rng);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double variance = sum_sq / n - mean * mean;
    // Var of the sample variance for Gamma(m, 1/m): (mu4 - sigma^4) / n with mu4 = 3(m + 2) / m^3.
    const double mu4 = 3.0 * (m + 2.0) / (m * m * m);
    const double se = std::sqrt((mu4 - 1.0 / (m * m)) / n);
    EXPECT_NEAR(variance, 1.0 / m, 4.0 * se);
}

TEST(DrawFadingPower, NakagamiMatchesGammaLaw)
{
    RandomStream rng(24);
    constexpr double m = 3.2;
    std::vector<double> sample(100000);
    for (auto& x : sample) x = draw_fading_power(FadingModel::nakagami(m), rng);
    boost::math::gamma_distribution<double> law(m, 1.0 / m);
    const double d = test::ks_statistic(sample, [&](double x) { return boost::math::cdf(law, x); });
    EXPECT_LT(d, test::ks_critical(sample.size(), 0.01));
}

TEST(DrawFadingPower, RicianZeroIsRayleigh)
{
    RandomStream a(25, 0);
    RandomStream b(25, 1);
    std::vector<double> rician(100000);
    std::vector<double> rayleigh(100000);
    for (auto& x : rician) x = draw_fading_power(FadingModel::rician(0.0), a);
    for (auto& x : rayleigh) x = draw_fading_power(FadingModel::rayleigh(), b);
    EXPECT_LT(test::ks_two_sample(rician, rayleigh), test::ks_two_sample_critical(rician.size(), rayleigh.size(), 0.01));
    const double d = test::ks_statistic(rician, [](double x) { return -std::expm1(-x); });
    EXPECT_LT(d, test::ks_critical(rician.size(), 0.01));
}

TEST(DrawFadingPower, RayleighEqualsNakagamiOne)
{
    EXPECT_DOUBLE_EQ(FadingModel::rayleigh().equivalent_nakagami_m(), 1.0);
    RandomStream rng(26);
    std::vector<double> sample(100000);
    for (auto& x : sample) x = draw_fading_power(FadingModel::nakagami(1.0), rng);
    EXPECT_LT(test::ks_statistic(sample, [](double x) { return -std::expm1(-x); }),
              test::ks_critical(sample.size(), 0.01));
}

TEST(FadingModel, Validation)
{
    EXPECT_THROW(FadingModel::nakagami(0.49).validate(), DomainError);
    EXPECT_NO_THROW(FadingModel::nakagami(0.5).validate());
    EXPECT_THROW(FadingModel::rician(-0.1).validate(), DomainError);
}

TEST(RicianToNakagami, Examples)
{
    EXPECT_DOUBLE_EQ(rician_k_to_nakagami_m(0.0), 1.0);
    EXPECT_NEAR(rician_k_to_nakagami_m(5.0), 36.0 / 11.0, 1e-15);
    EXPECT_THROW(rician_k_to_nakagami_m(-1.0), DomainError);
}

TEST(RicianToNakagami, IncreasingWithLinearAsymptote)
{
    double previous = rician_k_to_nakagami_m(0.0);
    for (double k = 0.1; k < 1e4; k *= 1.3) {
        const double m = rician_k_to_nakagami_m(k);
        ASSERT_GT(m, previous);
        previous = m;
    }
    const double k = 1e6;
    EXPECT_NEAR(rician_k_to_nakagami_m(k) - (k / 2.0 + 0.75), 0.0, 1e-5);
}

TEST(ChannelRealization, FromPairsLayout)
{
    const auto r = ChannelRealization::from_pairs({{1.0, 2.0}, {}, {0.5}});
    ASSERT_EQ(r.pair_count(), 3u);
    EXPECT_EQ(r.counts()[0], 2u);
    EXPECT_EQ(r.counts()[1], 0u);
    EXPECT_EQ(r.pair_powers(0).size(), 2u);
    EXPECT_EQ(r.pair_powers(1).size(), 0u);
    EXPECT_DOUBLE_EQ(r.pair_power_sum(0), 3.0);
    EXPECT_DOUBLE_EQ(r.pair_power_sum(2), 0.5);
    EXPECT_EQ(r.total_paths(), 3u);
    EXPECT_THROW(ChannelRealization::from_pairs({{-1.0}}), DomainError);
}

class RealizeChannel : public ::testing::TestWithParam<PathSampling>
{
};

TEST_P(RealizeChannel, StructuralInvariants)
{
    RandomStream rng(31);
    for (int t = 0; t < 1000; ++t) {
        const auto r = realize_channel(1.9, 121, FadingModel::nakagami(3.2), rng, GetParam());
        ASSERT_EQ(r.pair_count(), 121u);
        std::size_t total = 0;
        for (std::size_t i = 0; i < r.pair_count(); ++i) {
            ASSERT_EQ(r.counts()[i], r.pair_powers(i).size());
            for (double g : r.pair_powers(i)) ASSERT_GE(g, 0.0);
            total += r.counts()[i];
        }
        ASSERT_EQ(total, r.total_paths());
    }
}

TEST_P(RealizeChannel, TotalPowerMeanIsLambda0)
{
    RandomStream rng(32);
    constexpr int n = 100000;
    constexpr double lambda0 = 1.9;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int t = 0; t < n; ++t) {
        const auto r = realize_channel(lambda0, 121, FadingModel::rayleigh(), rng, GetParam());
        double total = 0.0;
        for (std::size_t i = 0; i < r.pair_count(); ++i) total += r.pair_power_sum(i);
        sum += total;
        sum_sq += total * total;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    EXPECT_NEAR(mean, lambda0, 4.0 * se);
}

TEST_P(RealizeChannel, AllEmptyFraction)
{
    RandomStream rng(33);
    constexpr int n = 100000;
    int empty = 0;
    for (int t = 0; t < n; ++t) empty += realize_channel(1.9, 121, FadingModel::rayleigh(), rng, GetParam()).total_paths() == 0;
    const double p0 = std::exp(-1.9);
    EXPECT_NEAR(static_cast<double>(empty) / n, p0, 4.0 * std::sqrt(p0 * (1.0 - p0) / n));
}

TEST_P(RealizeChannel, TotalCountIsPoisson)
{
    RandomStream rng(34);
    constexpr int n = 100000;
    constexpr double lambda0 = 1.9;
    std::vector<std::uint64_t> observed(30, 0);
    for (int t = 0; t < n; ++t) {
        const auto count = realize_channel(lambda0, 121, FadingModel::rayleigh(), rng, GetParam()).total_paths();
        ++observed[std::min<std::size_t>(count, observed.size() - 1)];
    }
    boost::math::poisson_distribution<double> law(lambda0);
    std::vector<double> expected(observed.size());
    for (std::size_t k = 0; k + 1 < expected.size(); ++k) expected[k] = n * boost::math::pdf(law, static_cast<double>(k));
    expected.back() = n * boost::math::cdf(boost::math::complement(law, static_cast<double>(expected.size() - 2)));
    int dof = 0;
    const double stat = test::chi_square_statistic(observed, expected, &dof);
    EXPECT_LT(stat, test::chi_square_critical(dof, 0.01));
}

TEST_P(RealizeChannel, SinglePairHoldsPoissonLambda0)
{
    RandomStream rng(35);
    constexpr int n = 100000;
    double sum = 0.0;
    for (int t = 0; t < n; ++t) {
        const auto r = realize_channel(2.0, 1, FadingModel::rayleigh(), rng, GetParam());
        ASSERT_EQ(r.pair_count(), 1u);
        sum += r.counts()[0];
    }
    EXPECT_NEAR(sum / n, 2.0, 4.0 * std::sqrt(2.0 / n));
}

TEST_P(RealizeChannel, ReproducibleForSeed)
{
    RandomStream a(36, 3);
    RandomStream b(36, 3);
    for (int t = 0; t < 100; ++t) {
        const auto x = realize_channel(1.9, 121, FadingModel::nakagami(3.2), a, GetParam());
        const auto y = realize_channel(1.9, 121, FadingModel::nakagami(3.2), b, GetParam());
        ASSERT_EQ(x.total_paths(), y.total_paths());
        for (std::size_t i = 0; i < x.pair_count(); ++i) {
            ASSERT_EQ(x.counts()[i], y.counts()[i]);
            ASSERT_EQ(x.pair_power_sum(i), y.pair_power_sum(i));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Sampling, RealizeChannel,
                         ::testing::Values(PathSampling::superposition, PathSampling::per_pair),
                         [](const auto& info) {
                             return info.param == PathSampling::superposition ? std::string("superposition")
                                                                              : std::string("per_pair");
                         });

TEST(ChannelSampler, PerPairCountDistributionMatchesAcrossModes)
{
    // Per-pair occupancy from superposition sampling against the per-pair Poisson law.
    RandomStream rng(37);
    ChannelSampler sampler(1.9, 4, FadingModel::rayleigh(), PathSampling::superposition);
    ChannelRealization r;
    constexpr int n = 100000;
    std::vector<std::uint64_t> observed(8, 0);
    for (int t = 0; t < n; ++t) {
        sampler.draw(rng, r);
        ++observed[std::min<std::size_t>(r.counts()[2], observed.size() - 1)];
    }
    boost::math::poisson_distribution<double> law(1.9 / 4);
    std::vector<double> expected(observed.size());
    for (std::size_t k = 0; k + 1 < expected.size(); ++k) expected[k] = n * boost::math::pdf(law, static_cast<double>(k));
    expected.back() = n * boost::math::cdf(boost::math::complement(law, static_cast<double>(expected.size() - 2)));
    int dof = 0;
    const double stat = test::chi_square_statistic(observed, expected, &dof);
    EXPECT_LT(stat, test::chi_square_critical(dof, 0.01));
}

} // namespace
} // namespace beamsim
