#include <gtest/gtest.h>

#include <cmath>

#include "gkf/kinematics/operators.hpp"

using namespace gkf;
using namespace gkf::kin;
using lk::ValuationVector;

namespace {

PiScalar scale(int N, int twice) { return PiScalar::half_power(Rational(4 * N), twice); }

KinematicTensor chi_via_p_sigma(int N)
{
    KinematicTensor out(N, Basis::Sigma, Basis::Sigma);
    for (int j = 0; N - 2 * j >= 0; ++j) {
        out += p_sigma(N - 2 * j, N);
    }
    return out;
}

} // namespace

TEST(PSigma, LowDegreeTerms)
{
    const int N = 5;
    const KinematicTensor p0 = p_sigma(0, N);
    const KinematicTensor p1 = p_sigma(1, N);
    const PiScalar half(rat(1, 2));
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
            EXPECT_EQ(p0(i, j), i == 0 && j == 0 ? half : PiScalar());
            EXPECT_EQ(p1(i, j), i + j == 1 ? half : PiScalar());
        }
    }
}

TEST(PSigma, ApplyIsLinear)
{
    const int N = 6;
    ValuationVector a(N, Basis::T);
    a[1] = PiScalar(3);
    a[4] = PiScalar::pi_power(1);
    ValuationVector b(N, Basis::T);
    b[1] = PiScalar(rat(-1, 2));
    b[2] = PiScalar(7);
    ValuationVector sum(N, Basis::T);
    for (int i = 0; i <= N; ++i) {
        sum[i] = a[i] + b[i];
    }
    KinematicTensor pa = p_apply(a);
    pa += p_apply(b);
    EXPECT_EQ(p_apply(sum), pa);
}

TEST(PTau, TopTermCoefficient)
{
    for (int N : {3, 6}) {
        const KinematicTensor t = p_tau(N, N);
        // 2^{-N-1} N^{-N/2}
        const PiScalar expected = PiScalar::half_power(Rational(N), -N) * (Rational(1) / Rational(1L << (N + 1)));
        EXPECT_EQ(t(N, N), expected);
    }
}

TEST(PTau, SupportOnAntiDiagonal)
{
    const int N = 7;
    for (int k = 0; k <= N; ++k) {
        const KinematicTensor t = p_tau(k, N);
        for (int i = 0; i <= N; ++i) {
            for (int j = 0; j <= N; ++j) {
                if (i + j != N + k) {
                    EXPECT_TRUE(t(i, j).is_zero()) << k << " " << i << " " << j;
                } else {
                    EXPECT_FALSE(t(i, j).is_zero());
                }
            }
        }
    }
}

TEST(PTau, MatchesPSigmaAfterRescaling)
{
    const int N = 8;
    for (int k = 0; k <= N; ++k) {
        KinematicTensor expected = p_sigma(N - k, N);
        expected *= scale(N, k);
        EXPECT_EQ(convert_tensor(p_tau(k, N), Basis::Sigma, Basis::Sigma), expected) << k;
    }
}

TEST(PChi, ConstantTermIsHalfSigmaZero)
{
    const KinematicTensor p = p_chi(6);
    EXPECT_EQ(p(0, 0), PiScalar(rat(1, 2)));
    for (int i = 1; i <= 6; ++i) {
        EXPECT_TRUE(p(0, i).is_zero());
    }
}

TEST(PChi, AgreesWithPSigmaReconstruction)
{
    for (int N : {1, 2, 5, 9}) {
        EXPECT_EQ(convert_tensor(p_chi(N), Basis::Sigma, Basis::Sigma), chi_via_p_sigma(N)) << N;
        EXPECT_EQ(p_apply(ValuationVector::chi(N)), chi_via_p_sigma(N)) << N;
    }
}

TEST(PChi, CroftonPatternForBallAndGreatHypersphere)
{
    // chi(B_r cap g S^{N-1}) is 1 exactly when the hypersphere meets the ball, i.e.
    // when its pole lies within theta of the equator relative to the ball's center
    const int N = 10;
    const double R = std::sqrt(double(N));
    for (double r : {0.4, 1.5, 3.0}) {
        const double p = evaluate_tensor(p_chi(N), lk::GeodesicBall{N, r}, lk::GreatSubsphere{N, N - 1}).value;
        EXPECT_NEAR(p, 1.0 - 2.0 * num::cap_fraction(N, 0.5 * num::pi - r / R), 1e-12) << r;
    }
}

TEST(NuTable, LowRows)
{
    const NuTable t = nu_table(7);
    EXPECT_EQ(t[0][0], PiScalar(rat(1, 2)));
    EXPECT_EQ(t[1][1], PiScalar(rat(1, 2)));
    for (int i = 1; i <= 7; ++i) {
        EXPECT_TRUE(t[0][static_cast<std::size_t>(i)].is_zero());
    }
    for (int i = 0; i <= 7; ++i) {
        if (i != 1) {
            EXPECT_TRUE(t[1][static_cast<std::size_t>(i)].is_zero());
        }
    }
}

TEST(NuTable, ClosedFormCoefficients)
{
    const int N = 12;
    const NuTable t = nu_table(N);
    for (int k = 0; k <= N; ++k) {
        for (int i = 0; i <= N; ++i) {
            EXPECT_EQ(t[k][static_cast<std::size_t>(i)], PiScalar(nu_sigma_coefficient(k, i))) << k << " " << i;
        }
    }
}

TEST(NuTable, PrintedFormDiffersOnlyBySignOnMultiplesOfFour)
{
    const int N = 20;
    const NuTable t = nu_table(N);
    for (int k = 0; k <= N; ++k) {
        const auto printed = nu_printed_form(N, k);
        const bool flipped = k >= 4 && k % 4 == 0;
        for (int i = 0; i <= N; ++i) {
            const PiScalar& a = t[k][static_cast<std::size_t>(i)];
            const PiScalar& b = printed[static_cast<std::size_t>(i)];
            EXPECT_EQ(flipped ? -b : b, a) << "k=" << k << " i=" << i;
        }
    }
}

TEST(PUPower, ZeroIsPChiAndSupportStartsAtM)
{
    const int N = 8;
    EXPECT_EQ(p_u_power(0, N), p_chi(N));
    for (int m = 0; m <= N; ++m) {
        const KinematicTensor t = p_u_power(m, N);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j <= N; ++j) {
                EXPECT_TRUE(t(i, j).is_zero());
            }
        }
    }
}

TEST(PUPower, MultiplicativityOnTheLeftLeg)
{
    // p(u^m) = u^m . p(chi) on the left leg
    const int N = 7;
    const KinematicTensor chi = p_chi(N);
    for (int m = 1; m <= N; ++m) {
        KinematicTensor shifted(N, Basis::U, Basis::Sigma);
        for (int i = 0; i + m <= N; ++i) {
            for (int j = 0; j <= N; ++j) {
                shifted(i + m, j) = chi(i, j);
            }
        }
        EXPECT_EQ(p_u_power(m, N), shifted) << m;
    }
}

TEST(PUPower, FloatPairingMatchesExactPairing)
{
    const int N = 12;
    for (int m = 0; m <= 3; ++m) {
        const auto exact = evaluate_tensor(p_u_power(m, N), lk::GreatSubsphere{N, 2}, lk::SubsphereTube{N, 2, 1.0});
        const double fl = p_u_power_pairing(m, lk::GreatSubsphere{N, 2}, lk::SubsphereTube{N, 2, 1.0});
        EXPECT_NEAR(fl, exact.value, 1e-12 * std::max(1.0, std::fabs(exact.value))) << m;
    }
}

TEST(TubeIdentity, ZeroRadius)
{
    const TubeIdentity t = tube_volume_identity(20, 2, 1.0, 0.0);
    const double vol = 0.5 * lk::sigma_values(lk::SubsphereTube{20, 2, 1.0})[0];
    EXPECT_NEAR(t.lhs, vol, 1e-13);
    EXPECT_NEAR(t.rhs, t.lhs, 1e-10 * t.lhs);
}

TEST(TubeIdentity, ReferencePoint)
{
    const TubeIdentity t = tube_volume_identity(20, 2, 1.0, 0.5);
    EXPECT_NEAR(t.rhs / t.lhs, 1.0, 1e-8);
}

TEST(TubeIdentity, MonotoneInRadius)
{
    double prev = 0.0;
    for (double r = 0.0; r < 2.0; r += 0.25) {
        const double v = tube_volume_identity(15, 3, 0.6, r).lhs;
        EXPECT_GT(v, prev);
        prev = v;
    }
    EXPECT_THROW(tube_volume_identity(4, 2, 2.0, 1.5), std::domain_error);
}

TEST(GkfCoefficient, Examples)
{
    EXPECT_EQ(gkf_coefficient(0), PiScalar(1));
    EXPECT_EQ(gkf_coefficient(2), PiScalar(rat(1, 4)));
    EXPECT_EQ(gkf_coefficient(1), PiScalar::pi_power(1) * PiScalar::sqrt_of(rat(1, 2)) * rat(1, 2));
    EXPECT_NEAR(float_of(gkf_coefficient(1)), std::sqrt(num::pi / 2.0) / 2.0, 1e-15);
}

TEST(TensorLimits, ExactCapIsEnforced)
{
    EXPECT_THROW(p_chi(tensor_limits().max_exact_N + 1), std::domain_error);
}
