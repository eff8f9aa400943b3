#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "gkf/gaussian_volumes.hpp"

using namespace gkf;
using namespace gkf::gauss;

namespace {
const double kInvRootTwoPi = 1.0 / std::sqrt(2.0 * num::pi);
}

TEST(GaussMeasureTube, Examples)
{
    EXPECT_EQ(gauss_measure_tube(FullSpace{3}, 0.7), 1.0);
    EXPECT_DOUBLE_EQ(gauss_measure_tube(HalfSpace{1, 0.0}, 0.0), 0.5);
    EXPECT_NEAR(gauss_measure_tube(CenteredBall{2, 1.0}, 0.0), 1.0 - std::exp(-0.5), 1e-15);
    EXPECT_NEAR(gauss_measure_tube(HalfSpace{1, 1.0}, 0.25), 0.5 * std::erfc(0.75 / std::sqrt(2.0)), 1e-15);
    EXPECT_EQ(gauss_measure_tube(Origin{2}, 0.0), 0.0);
    EXPECT_NEAR(gauss_measure_tube(Origin{2}, 0.5), 1.0 - std::exp(-0.125), 1e-15);
    EXPECT_THROW(gauss_measure_tube(HalfSpace{1, 0.0}, -0.1), std::domain_error);
}

TEST(Gamma, FullSpaceHasOnlyGammaZero)
{
    const GammaVector g = gamma(FullSpace{4}, 6);
    EXPECT_EQ(g.values[0], 1.0);
    for (int k = 1; k <= 6; ++k) {
        EXPECT_EQ(g.values[static_cast<std::size_t>(k)], 0.0);
        ASSERT_TRUE(g.exact[static_cast<std::size_t>(k)].has_value());
    }
}

TEST(Gamma, HalfSpaceFirstDerivativeIsTheDensity)
{
    for (double u : {-1.0, 0.0, 0.5, 2.0}) {
        const GammaVector g = gamma(HalfSpace{1, u}, 1);
        EXPECT_NEAR(g.values[1], kInvRootTwoPi * std::exp(-0.5 * u * u), 1e-16) << u;
    }
}

TEST(Gamma, HalfSpaceAtZeroIsExact)
{
    const GammaVector g = gamma(HalfSpace{1, 0.0}, 5);
    ASSERT_TRUE(g.exact[2].has_value());
    EXPECT_TRUE(g.exact[2]->is_zero()); // He_1(0) = 0
    // gamma_3 = He_2(0) phi(0) = -1/sqrt(2 pi)
    EXPECT_EQ(*g.exact[3], PiScalar::pi_power(-1) * PiScalar::sqrt_of(rat(1, 2)) * Rational(-1));
}

TEST(Gamma, OriginVanishesBelowDimension)
{
    for (int d = 1; d <= 5; ++d) {
        const GammaVector g = gamma(Origin{d}, 6);
        for (int k = 0; k < d; ++k) {
            EXPECT_EQ(g.values[static_cast<std::size_t>(k)], 0.0) << d << " " << k;
        }
        EXPECT_GT(std::fabs(g.values[static_cast<std::size_t>(d)]), 0.0) << d;
    }
}

TEST(Gamma, CenteredBallFirstDerivativeIsChiDensity)
{
    for (int d : {1, 2, 3, 5}) {
        const double rho = 1.3;
        const GammaVector g = gamma(CenteredBall{d, rho}, 1);
        const double density =
            std::pow(2.0, 1.0 - 0.5 * d) / std::tgamma(0.5 * d) * std::pow(rho, d - 1) * std::exp(-0.5 * rho * rho);
        EXPECT_NEAR(g.values[1], density, 1e-15) << d;
    }
}

TEST(GammaFdOracle, MatchesHalfSpace)
{
    for (int k = 0; k <= 4; ++k) {
        EXPECT_NEAR(gamma_fd_oracle(HalfSpace{1, 1.0}, k), gamma(HalfSpace{1, 1.0}, 4).values[static_cast<std::size_t>(k)],
                    1e-6)
            << k;
    }
}

TEST(GammaFdOracle, OrderZeroIsTheMeasure)
{
    EXPECT_EQ(gamma_fd_oracle(CenteredBall{3, 2.0}, 0), gauss_measure_tube(CenteredBall{3, 2.0}, 0.0));
}

TEST(GammaFdOracle, ContractChecks)
{
    EXPECT_THROW(gamma_fd_oracle(HalfSpace{1, 0.0}, 9), std::domain_error);
    EXPECT_THROW(gamma_fd_oracle(HalfSpace{1, 0.0}, 2, 0.5), std::domain_error);
}

TEST(GkfPredict, TopDegreeKeepsOnlyGammaZero)
{
    for (const GaussSet& D : {GaussSet{HalfSpace{1, 0.3}}, GaussSet{CenteredBall{2, 1.0}}}) {
        const double p = gkf_predict(lk::UnitSphere{2}, D, 2);
        EXPECT_NEAR(p, 8.0 * gamma(D, 0).values[0], 1e-14);
    }
}

TEST(GkfPredict, EulerCharacteristicOfRandomCapOnS2)
{
    // the excursion set of <x, xi> on S^2 is a nonempty cap iff |xi| >= u, so
    // E chi = P(chi^2_3 >= u^2) for u >= 0
    for (double u = 0.0; u <= 4.0; u += 0.25) {
        const double oracle = boost::math::gamma_q(1.5, 0.5 * u * u);
        EXPECT_NEAR(gkf_predict(lk::UnitSphere{2}, HalfSpace{1, u}, 0), oracle, 1e-10) << u;
    }
}

TEST(GkfPredict, FullSpaceGivesLkNumbers)
{
    for (int m = 0; m <= 4; ++m) {
        EXPECT_NEAR(gkf_predict(lk::UnitSphere{4}, FullSpace{2}, m), lk::unit_lk(m, lk::UnitSphere{4}).value, 1e-13);
    }
    EXPECT_THROW(gkf_predict(lk::UnitSphere{2}, FullSpace{1}, 3), std::domain_error);
}

TEST(GaussSetValidation, Rejects)
{
    EXPECT_THROW(validate(CenteredBall{2, 0.0}), std::domain_error);
    EXPECT_THROW(validate(Origin{0}), std::domain_error);
    EXPECT_NO_THROW(validate(HalfSpace{1, -3.0}));
}
