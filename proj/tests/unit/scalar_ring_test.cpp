#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gkf/scalar_ring.hpp"

using gkf::HalfInteger;
using gkf::PiScalar;
using gkf::rat;
using gkf::Rational;

TEST(PiScalarArithmetic, HalfPowersMultiplyToPi)
{
    const PiScalar root = PiScalar::pi_power(1);
    EXPECT_EQ(root * root, PiScalar::pi_power(2));
}

TEST(PiScalarArithmetic, ZeroIsAdditiveIdentity)
{
    const PiScalar x = PiScalar::pi_power(3) * rat(-5, 7) + PiScalar(rat(2, 9));
    EXPECT_EQ(x + PiScalar(), x);
    EXPECT_EQ(PiScalar() + x, x);
}

TEST(PiScalarArithmetic, LikeTermsCollect)
{
    const PiScalar pi = PiScalar::pi_power(2);
    EXPECT_EQ(pi * Rational(2) - pi, pi);
    EXPECT_TRUE((pi - pi).is_zero());
    EXPECT_TRUE((pi - pi).terms().empty());
}

TEST(PiScalarArithmetic, RadicalsSquareToRationals)
{
    const PiScalar r2 = PiScalar::sqrt_of(Rational(2));
    EXPECT_EQ(r2 * r2, PiScalar(2));
    EXPECT_EQ(PiScalar::sqrt_of(Rational(8)), r2 * Rational(2));
    EXPECT_EQ(PiScalar::half_power(Rational(4), 3), PiScalar(8));
}

TEST(PiScalarArithmetic, InverseOfMonomial)
{
    const PiScalar x = PiScalar::pi_power(3) * PiScalar::sqrt_of(Rational(6)) * rat(2, 5);
    EXPECT_EQ(x * x.inverse(), PiScalar(1));
    EXPECT_THROW((x + PiScalar(1)).inverse(), std::domain_error);
}

TEST(PiScalarFormatting, OmitsTrivialFactors)
{
    EXPECT_EQ(PiScalar(8).to_string(), "8");
    EXPECT_EQ(PiScalar().to_string(), "0");
    EXPECT_EQ(gkf::omega(3).to_string(), "4/3·π");
    EXPECT_EQ(gkf::omega(4).to_string(), "1/2·π^2");
    EXPECT_EQ(PiScalar::pi_power(-3).to_string(), "1·π^{-3/2}");
}

TEST(Omega, SmallValues)
{
    EXPECT_EQ(gkf::omega(0), PiScalar(1));
    EXPECT_EQ(gkf::omega(1), PiScalar(2));
    EXPECT_EQ(gkf::omega(2), PiScalar::pi_power(2));
    EXPECT_EQ(gkf::omega(3), PiScalar::pi_power(2) * rat(4, 3));
    EXPECT_EQ(gkf::omega(4), PiScalar::pi_power(4) * rat(1, 2));
}

TEST(Alpha, SphereAreas)
{
    EXPECT_EQ(gkf::alpha(0), PiScalar(2));                       // two points
    EXPECT_EQ(gkf::alpha(1), PiScalar::pi_power(2) * Rational(2)); // circumference
    EXPECT_EQ(gkf::alpha(2), PiScalar::pi_power(2) * Rational(4)); // area of S^2
}

TEST(GammaHalf, KnownValues)
{
    EXPECT_EQ(gkf::gamma_half(1), PiScalar::pi_power(1));
    EXPECT_EQ(gkf::gamma_half(2), PiScalar(1));
    EXPECT_EQ(gkf::gamma_half(5), PiScalar::pi_power(1) * rat(3, 4));
    EXPECT_EQ(gkf::gamma_half(10), PiScalar(24));
    EXPECT_THROW(gkf::gamma_half(0), std::domain_error);
}

TEST(GeneralizedBinomial, Examples)
{
    EXPECT_EQ(gkf::generalized_binomial(HalfInteger::half(1), 0), Rational(1));
    EXPECT_EQ(gkf::generalized_binomial(HalfInteger::half(1), 2), rat(-1, 8));
    EXPECT_EQ(gkf::generalized_binomial(HalfInteger::whole(3), 2), Rational(3));
    EXPECT_EQ(gkf::generalized_binomial(HalfInteger::whole(3), 4), Rational(0));
    EXPECT_EQ(gkf::generalized_binomial(HalfInteger::whole(-1), 5), Rational(-1));
}

TEST(FloatOf, Examples)
{
    EXPECT_DOUBLE_EQ(gkf::float_of(PiScalar::pi_power(2)), std::numbers::pi);
    EXPECT_NEAR(gkf::float_of(gkf::omega(3)), 4.18879020478639098, 1e-15);
    EXPECT_EQ(gkf::float_of(PiScalar()), 0.0);
    EXPECT_DOUBLE_EQ(gkf::float_of(PiScalar::sqrt_of(Rational(2)) * PiScalar::pi_power(-1)),
                     std::sqrt(2.0 / std::numbers::pi));
}

TEST(FloatOf, CancellationIsResolvedAtHighPrecision)
{
    // (pi + 1e-30) - pi, formed exactly, must not collapse to zero
    const PiScalar pi = PiScalar::pi_power(2);
    const PiScalar tiny(Rational(1, 1) / Rational(gkf::Integer("1000000000000000000000000000000")));
    EXPECT_NEAR(gkf::float_of((pi + tiny) - pi + tiny), 2e-30, 1e-44);
}

TEST(DecimalString, FortyDigitsOfPi)
{
    EXPECT_EQ(gkf::decimal_string(PiScalar::pi_power(2), 40), "3.141592653589793238462643383279502884197");
}

TEST(ConstantTable, MatchesPointwiseConstants)
{
    const auto t = gkf::make_constant_table(12);
    ASSERT_EQ(t.omega.size(), 13U);
    ASSERT_EQ(t.alpha.size(), 13U);
    for (int n = 0; n <= 12; ++n) {
        EXPECT_EQ(t.omega[static_cast<std::size_t>(n)], gkf::omega(n));
        EXPECT_EQ(t.alpha[static_cast<std::size_t>(n)], gkf::alpha(n));
    }
}
