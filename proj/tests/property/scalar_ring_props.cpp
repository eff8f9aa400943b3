#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gkf/numerics.hpp"
#include "gkf/scalar_ring.hpp"

using gkf::PiScalar;
using gkf::rat;
using gkf::Rational;

namespace {

PiScalar random_scalar(std::mt19937_64& eng)
{
    std::uniform_int_distribution<int> terms(0, 4);
    std::uniform_int_distribution<long> num(-30, 30);
    std::uniform_int_distribution<long> den(1, 12);
    std::uniform_int_distribution<int> half_exp(-4, 4);
    std::uniform_int_distribution<int> radical(1, 4);
    const long radicals[] = {1, 2, 3, 6, 5};
    PiScalar x;
    for (int t = terms(eng); t > 0; --t) {
        x += PiScalar::pi_power(half_exp(eng)) * PiScalar::sqrt_of(Rational(radicals[radical(eng)])) * rat(num(eng), den(eng));
    }
    return x;
}

} // namespace

TEST(RingAxioms, HoldExactlyOnRandomInputs)
{
    std::mt19937_64 eng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        const PiScalar a = random_scalar(eng);
        const PiScalar b = random_scalar(eng);
        const PiScalar c = random_scalar(eng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, PiScalar());
        EXPECT_EQ(a * PiScalar(1), a);
        EXPECT_EQ(a * PiScalar(), PiScalar());
    }
}

TEST(RingAxioms, NormalizedTermsHaveNoZeros)
{
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const PiScalar a = random_scalar(eng);
        const PiScalar b = random_scalar(eng);
        for (const auto& t : (a * b - b * a + a).terms()) {
            EXPECT_NE(sgn(t.coeff), 0);
        }
    }
}

TEST(RingAxioms, FloatIsAHomomorphismToRounding)
{
    std::mt19937_64 eng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const PiScalar a = random_scalar(eng);
        const PiScalar b = random_scalar(eng);
        const double fa = gkf::float_of(a);
        const double fb = gkf::float_of(b);
        const double scale = std::max({1.0, std::fabs(fa), std::fabs(fb), std::fabs(fa * fb)});
        EXPECT_NEAR(gkf::float_of(a + b), fa + fb, 1e-14 * scale);
        EXPECT_NEAR(gkf::float_of(a * b), fa * fb, 1e-14 * scale);
    }
}

TEST(Omega, ConsecutiveRatioApproachesGaussianScale)
{
    // omega_n / omega_{n-1} ~ sqrt(2 pi / n)
    for (int n : {1000, 10000}) {
        const double ratio = gkf::float_of(gkf::omega(n) * gkf::omega(n - 1).inverse());
        EXPECT_NEAR(ratio * std::sqrt(n / (2.0 * gkf::num::pi)), 1.0, 0.01) << n;
    }
}

TEST(Omega, ExactAndLogPathsAgree)
{
    for (int n = 0; n <= 200; n += 7) {
        EXPECT_NEAR(std::log(gkf::float_of(gkf::omega(n))), gkf::num::log_omega(n), 1e-12) << n;
    }
}

TEST(Alpha, IsScaledOmegaThroughoutTheTable)
{
    const auto t = gkf::make_constant_table(60);
    for (int n = 0; n <= 60; ++n) {
        EXPECT_EQ(t.alpha[static_cast<std::size_t>(n)], gkf::omega(n + 1) * Rational(n + 1)) << n;
    }
}

TEST(Stirling, GammaIsWithinOnePercent)
{
    for (int k = 50; k <= 2000; k += 50) {
        const double log_ratio = std::lgamma(k + 1.0) + k * (1.0 - std::log(double(k))) - 0.5 * std::log(2.0 * gkf::num::pi * k);
        const double ratio = std::exp(log_ratio);
        EXPECT_GE(ratio, 0.99) << k;
        EXPECT_LE(ratio, 1.01) << k;
    }
}

TEST(GeneralizedBinomial, PascalRecurrence)
{
    // binom(t, j) = binom(t - 1, j) + binom(t - 1, j - 1), also at half-integers
    for (long twice = -9; twice <= 9; ++twice) {
        for (int j = 1; j <= 8; ++j) {
            const auto t = gkf::HalfInteger::half(twice);
            const auto t1 = gkf::HalfInteger::half(twice - 2);
            EXPECT_EQ(gkf::generalized_binomial(t, j),
                      gkf::generalized_binomial(t1, j) + gkf::generalized_binomial(t1, j - 1));
        }
    }
}
