#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gkf/simulation/drivers.hpp"
#include "support/mesh_oracle.hpp"

using namespace gkf;
using namespace gkf::sim;

TEST(Determinism, EstimatesDoNotDependOnWorkerCount)
{
    const LawChoice laws[] = {{Law::PiInfinity, 0}, {Law::PiN, 40}};
    for (const auto& law : laws) {
        McReport ref;
        for (int workers : {1, 2, 3, 8}) {
            RunOptions opt;
            opt.seed = 77;
            opt.workers = workers;
            const McReport r = estimate_lhs(lk::UnitSphere{2}, gauss::CenteredBall{2, 1.0}, Degree::Zero, law, 5000, opt);
            if (workers == 1) {
                ref = r;
            } else {
                EXPECT_EQ(r.estimate, ref.estimate) << workers;
                EXPECT_EQ(r.stderr_, ref.stderr_) << workers;
            }
        }
    }
}

TEST(Determinism, SeedsAndStreamsSeparateRuns)
{
    RunOptions a;
    a.seed = 5;
    RunOptions b = a;
    b.stream = 1;
    RunOptions c = a;
    c.seed = 6;
    auto run = [](const RunOptions& o) {
        return estimate_lhs(lk::UnitSphere{3}, gauss::HalfSpace{1, 0.5}, Degree::Zero, {}, 3000, o).estimate;
    };
    EXPECT_EQ(run(a), run(a));
    EXPECT_NE(run(a), run(b));
    EXPECT_NE(run(a), run(c));
}

TEST(UniformIntegrability, SecondMomentOfChiStaysBoundedInN)
{
    // E chi^2 under Pi_N is bounded uniformly in N (chi takes at most 2(n+1)
    // values), and the estimates approach the Pi_infinity one
    const lk::ModelSet A = lk::UnitSphere{2};
    const gauss::GaussSet D = gauss::CenteredBall{2, 1.2};
    auto second_moment = [&](const LawChoice& law) {
        RunOptions opt;
        opt.seed = 31;
        return monte_carlo(40000, opt, std::nan(""), [&](RngStream& rng) {
            const double chi = chi_intersection(A, D, sample_law(law, 2, 2, rng));
            return chi * chi;
        });
    };
    const McReport inf = second_moment({Law::PiInfinity, 0});
    for (int N : {50, 200, 1000}) {
        const McReport r = second_moment({Law::PiN, N});
        EXPECT_LE(r.estimate, 36.0);
        // common random numbers make the difference small; bias is O(1/N)
        EXPECT_LT(std::fabs(r.estimate - inf.estimate), 4.0 * std::hypot(r.stderr_, inf.stderr_) + 5.0 / N) << N;
    }
}

TEST(Frames, RandomShapesAreOrthonormal)
{
    std::mt19937_64 eng(12);
    RngStream rng(3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = std::uniform_int_distribution<int>(0, 5)(eng);
        const int N = n + std::uniform_int_distribution<int>(0, 60)(eng);
        const Eigen::MatrixXd q = sample_stiefel_frame(n, N, rng);
        const Eigen::MatrixXd gram = q.transpose() * q;
        EXPECT_LT((gram - Eigen::MatrixXd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff(), 1e-12) << n << " " << N;
        // the top rows of a full frame have orthogonal rows of norm <= 1
        const LinearMapSample f = sample_pi_N(n, std::min(N + 1, n + 1), N, rng);
        const Eigen::MatrixXd rows = f.entries * f.entries.transpose() / double(N);
        EXPECT_LE(rows.diagonal().maxCoeff(), 1.0 + 1e-12);
    }
}

TEST(MeshOracle, RandomQuadraticExcursionsOnTheSphere)
{
    // chi({|F x| <= rho} on S^2) by Morse count versus a refined icosphere
    std::mt19937_64 eng(2);
    RngStream rng(19, 0);
    int compared = 0;
    for (int d : {1, 2, 3}) {
        for (int trial = 0; trial < 12; ++trial) {
            const LinearMapSample f = sample_pi_infinity(2, d, rng);
            const double rho = std::uniform_real_distribution<double>(0.3, 2.0)(eng);
            const auto m = gkf::testing::mesh_chi([&](const Eigen::Vector3d& x) { return (f.entries * x).squaredNorm() - rho * rho; }, 0.03, 7);
            if (!m.stable) {
                continue; // level set too close to a critical value to resolve
            }
            ++compared;
            EXPECT_EQ(chi_intersection(lk::UnitSphere{2}, gauss::CenteredBall{d, rho}, f), m.chi) << "d=" << d << " trial " << trial;
        }
    }
    EXPECT_GE(compared, 30);
}

TEST(MeshOracle, RandomCapsAgainstHalfSpaces)
{
    std::mt19937_64 eng(4);
    RngStream rng(23, 0);
    int compared = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const LinearMapSample f = sample_pi_infinity(2, 1, rng);
        const double u = std::uniform_real_distribution<double>(-1.5, 1.5)(eng);
        const double theta = std::uniform_real_distribution<double>(0.3, 1.5)(eng);
        // the intersection of the cap {x_0 >= cos theta} with {<xi, x> >= u}
        const auto m = gkf::testing::mesh_chi(
            [&](const Eigen::Vector3d& x) {
                return std::max(std::cos(theta) - x(0), u - f.entries.row(0).dot(x));
            },
            0.03, 7);
        if (!m.stable) {
            continue;
        }
        ++compared;
        EXPECT_EQ(chi_intersection(lk::UnitCap{2, theta}, gauss::HalfSpace{1, u}, f), m.chi) << trial;
    }
    EXPECT_GE(compared, 15);
}

TEST(TopDegree, VolumeIdentityUnderBothLaws)
{
    const lk::ModelSet A = lk::UnitSphere{3};
    const double top = lk::unit_lk(3, A).value;
    for (double u : {-0.5, 0.0, 1.2}) {
        const gauss::GaussSet D = gauss::HalfSpace{1, u};
        EXPECT_NEAR(lhs_prediction(A, D, 3, {}), top * gauss::gauss_measure_tube(D, 0.0), 1e-12);
        for (int N : {10, 60}) {
            const double pn = lhs_prediction(A, D, 3, {Law::PiN, N});
            EXPECT_NEAR(pn, top * (1.0 - projected_marginal_cdf(N, u)), 1e-9) << N << " " << u;
        }
        RunOptions opt;
        opt.seed = 3;
        const McReport r = estimate_lhs(A, D, Degree::Top, {}, 20000, opt);
        EXPECT_LT(std::fabs(r.z_score), 3.0) << u;
    }
}
