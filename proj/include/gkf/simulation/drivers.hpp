#pragma once

// Monte Carlo drivers: the left side of the Gaussian kinematic formula under
// Pi_infinity and Pi_N, Poincare's limit, nu_k(D_N) convergence, and the
// kinematic inequality on Sigma^N.
//
// Sample i draws from its own RngStream(seed, (stream << 40) + i), so runs
// that differ only in the law of F (Pi_N for several N, Pi_infinity) use
// common random numbers sample by sample. Samples are grouped into fixed
// blocks of kBlockSize; workers take whole blocks and block sums are combined
// in block order, so reports depend only on (seed, stream, n_samples) and not
// on the number of workers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "gkf/gaussian_volumes.hpp"
#include "gkf/kinematics/operators.hpp"
#include "gkf/lk_algebra/evaluate.hpp"
#include "gkf/simulation/excursion.hpp"
#include "gkf/simulation/lens.hpp"
#include "gkf/simulation/linear_maps.hpp"

namespace gkf::sim {

inline constexpr std::int64_t kBlockSize = 1024;

struct RunOptions {
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    int workers = 1;
};

enum class Verdict { Pass, Warn, Fail, NotApplicable };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Warn: return "WARN";
    case Verdict::Fail: return "FAIL";
    case Verdict::NotApplicable: return "N/A";
    }
    return "?";
}

struct McReport {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::int64_t n_samples = 0;
    double prediction = std::numeric_limits<double>::quiet_NaN();
    double z_score = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    bool has_prediction() const { return !std::isnan(prediction); }

    /// |z| < 3 PASS, 3 <= |z| < 4 WARN, otherwise FAIL. A zero-variance
    /// estimate passes only when it equals the prediction to rounding.
    Verdict verdict() const
    {
        if (!has_prediction()) {
            return Verdict::NotApplicable;
        }
        if (stderr_ == 0.0) {
            return std::fabs(estimate - prediction) <= 1e-12 * std::max(1.0, std::fabs(prediction)) ? Verdict::Pass
                                                                                                     : Verdict::Fail;
        }
        const double z = std::fabs(z_score);
        return z < 3.0 ? Verdict::Pass : (z < 4.0 ? Verdict::Warn : Verdict::Fail);
    }
};

namespace detail {

/// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x)
    {
        const double t = sum + x;
        comp += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct BlockResult {
    std::int64_t count = 0;
    double shift = 0.0;   // first value of the block
    double sum = 0.0;     // of (v - shift)
    double sumsq = 0.0;   // of (v - shift)^2
    std::vector<double> values; // kept only on request

    double mean() const { return shift + sum / double(count); }
    double m2() const { return std::max(0.0, sumsq - sum * sum / double(count)); }
};

/// Evaluate fn(rng) for n_samples draws, block-parallel.
inline std::vector<BlockResult> run_blocks(std::int64_t n_samples, const RunOptions& opt, bool keep_values,
                                           const std::function<double(RngStream&)>& fn)
{
    if (n_samples < 1) {
        throw std::domain_error("Monte Carlo run needs at least one sample");
    }
    const std::int64_t n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;
    std::vector<BlockResult> blocks(static_cast<std::size_t>(n_blocks));
    auto run_block = [&](std::int64_t b) {
        const std::int64_t begin = b * kBlockSize;
        const std::int64_t end = std::min(n_samples, begin + kBlockSize);
        BlockResult& r = blocks[static_cast<std::size_t>(b)];
        for (std::int64_t i = begin; i < end; ++i) {
            RngStream rng(opt.seed, (opt.stream << 40) + static_cast<std::uint64_t>(i));
            const double v = fn(rng);
            if (r.count++ == 0) {
                r.shift = v;
            }
            r.sum += v - r.shift;
            r.sumsq += (v - r.shift) * (v - r.shift);
            if (keep_values) {
                r.values.push_back(v);
            }
        }
    };
    const int workers = std::max(1, std::min<int>(opt.workers, static_cast<int>(n_blocks)));
    if (workers == 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b) {
            run_block(b);
        }
        return blocks;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::int64_t b = w; b < n_blocks; b += workers) {
                    run_block(b);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return blocks;
}

inline McReport summarize(const std::vector<BlockResult>& blocks, std::int64_t n, const RunOptions& opt,
                          double prediction)
{
    // Block means are taken relative to the first block's, so constant data
    // gives an exactly zero variance; blocks combine as in Chan et al.
    const double base = blocks.front().mean();
    CompensatedSum dev;
    CompensatedSum m2;
    for (const auto& b : blocks) {
        const double d = b.mean() - base;
        dev.add(double(b.count) * d);
        m2.add(b.m2() + double(b.count) * d * d);
    }
    const double mean_dev = dev.value() / double(n);
    McReport r;
    r.n_samples = n;
    r.estimate = base + mean_dev;
    const double var = n > 1 ? std::max(0.0, (m2.value() - double(n) * mean_dev * mean_dev) / double(n - 1)) : 0.0;
    r.stderr_ = std::sqrt(var / double(n));
    r.prediction = prediction;
    if (!std::isnan(prediction) && r.stderr_ > 0.0) {
        r.z_score = (r.estimate - prediction) / r.stderr_;
    }
    r.seed = opt.seed;
    r.stream_id = opt.stream;
    return r;
}

} // namespace detail

/// Generic Monte Carlo mean of fn over n_samples draws.
inline McReport monte_carlo(std::int64_t n_samples, const RunOptions& opt, double prediction,
                            const std::function<double(RngStream&)>& fn)
{
    return detail::summarize(detail::run_blocks(n_samples, opt, false, fn), n_samples, opt, prediction);
}

/// D_N = Sigma^N ∩ pi_N^{-1} D as a model set of Sigma^N.
inline ModelSet lift_gauss_set(const GaussSet& D, int N)
{
    gauss::validate(D);
    const double R = std::sqrt(double(N));
    const int d = gauss::dimension(D);
    if (d > N) {
        throw std::domain_error("lift_gauss_set: need d <= N");
    }
    if (const auto* b = std::get_if<gauss::CenteredBall>(&D)) {
        if (!(b->rho < R)) {
            throw std::domain_error("lift_gauss_set: need rho < sqrt(N)");
        }
        return lk::SubsphereTube{N, d, R * std::asin(b->rho / R)};
    }
    if (const auto* h = std::get_if<gauss::HalfSpace>(&D)) {
        if (!(std::fabs(h->u) < R)) {
            throw std::domain_error("lift_gauss_set: need |u| < sqrt(N)");
        }
        return lk::GeodesicBall{N, R * std::acos(h->u / R)};
    }
    if (std::holds_alternative<gauss::Origin>(D)) {
        return lk::GreatSubsphere{N, N - d};
    }
    return lk::AmbientSphere{N};
}

enum class Degree { Zero, Top };

inline int top_degree(const ModelSet& A)
{
    if (const auto* g = std::get_if<lk::UnitGreatSubsphere>(&A)) {
        return g->m;
    }
    return lk::ambient_dimension(A);
}

/// Closed-form value of E[t^m(A ∩ F^{-1} D)]: the Gaussian kinematic sum under
/// Pi_infinity; 2^m p_N(u^m)(iota_N A, D_N) under Pi_N when A is a great
/// subsphere (NaN when no closed form is available).
inline double lhs_prediction(const ModelSet& A, const GaussSet& D, int m, const LawChoice& law)
{
    if (law.law == Law::PiInfinity) {
        return gauss::gkf_predict(A, D, m);
    }
    int j = -1;
    if (const auto* s = std::get_if<lk::UnitSphere>(&A)) {
        j = s->n;
    } else if (const auto* g = std::get_if<lk::UnitGreatSubsphere>(&A)) {
        j = g->m;
    }
    if (j < 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const ModelSet ia = lk::GreatSubsphere{law.N, j};
    return std::ldexp(kin::p_u_power_pairing(m, ia, lift_gauss_set(D, law.N)), m);
}

/// Monte Carlo estimate of E[t^m(A ∩ F^{-1} D)] for m = 0 (Euler
/// characteristic) or m = top (t^top(A) times the volume fraction).
inline McReport estimate_lhs(const ModelSet& A, const GaussSet& D, Degree m, const LawChoice& law,
                             std::int64_t n_samples, const RunOptions& opt, int inner_points = 16)
{
    lk::validate(A);
    gauss::validate(D);
    if (!lk::is_unit_side(A)) {
        throw std::invalid_argument("estimate_lhs: A must be a unit-sphere set");
    }
    const int n = lk::ambient_dimension(A);
    const int d = gauss::dimension(D);
    if (law.law == Law::PiN && (law.N < n || law.N < d)) {
        throw std::domain_error("estimate_lhs: Pi_N needs N >= max(n, d)");
    }
    const int degree = m == Degree::Zero ? 0 : top_degree(A);
    if (m == Degree::Zero) {
        // fail early on unsupported pairs
        RngStream probe(opt.seed, ~std::uint64_t(0));
        (void)chi_intersection(A, D, sample_pi_infinity(n, d, probe));
    }
    const double scale = m == Degree::Top ? lk::unit_lk(degree, A).value : 1.0;
    const double prediction = lhs_prediction(A, D, degree, law);
    return monte_carlo(n_samples, opt, prediction, [&](RngStream& rng) {
        const LinearMapSample F = sample_law(law, n, d, rng);
        if (m == Degree::Zero) {
            return double(chi_intersection(A, D, F));
        }
        return scale * volume_fraction(A, D, F, rng, inner_points);
    });
}

/// CDF of the first coordinate of a uniform point of Sigma^N (radius sqrt N).
inline double projected_marginal_cdf(int N, double x)
{
    const double R = std::sqrt(double(N));
    if (x <= -R) {
        return 0.0;
    }
    if (x >= R) {
        return 1.0;
    }
    // (x / R)^2 ~ Beta(1/2, N/2)
    const double half = 0.5 * boost::math::ibeta(0.5, 0.5 * N, x * x / double(N));
    return x < 0.0 ? 0.5 - half : 0.5 + half;
}

struct PoincareResult {
    double ks = 0.0;
    McReport second_moment; // of the first projected coordinate
};

inline double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Kolmogorov-Smirnov distance between the sample and a continuous CDF.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf)
{
    std::sort(xs.begin(), xs.end());
    const double n = double(xs.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        ks = std::max({ks, f - double(i) / n, double(i + 1) / n - f});
    }
    return ks;
}

/// How poincare_test draws the projected statistic.
///   Geometric: a uniform point of Sigma^N as sqrt(N) g / |g| for a Gaussian
///              vector g, then projected.
///   Quantile:  the same law by inversion of its exact CDF from one uniform
///              per sample; runs at different N with one seed then share their
///              uniforms, which makes comparisons across N far less noisy.
enum class PoincareSampler { Geometric, Quantile };

/// One draw of the projected statistic of a uniform point of Sigma^N: the
/// first coordinate when d = 1, the squared norm of the first d otherwise.
inline double projected_sample(int N, int d, PoincareSampler sampler, RngStream& rng)
{
    if (sampler == PoincareSampler::Quantile) {
        // |x|^2 / N ~ Beta(d/2, (N + 1 - d)/2); for d = 1 the sign is symmetric
        const double v = rng.uniform();
        if (d == 1) {
            const double b = boost::math::ibeta_inv(0.5, 0.5 * N, std::fabs(2.0 * v - 1.0));
            const double x = std::sqrt(double(N) * b);
            return v < 0.5 ? -x : x;
        }
        return double(N) * boost::math::ibeta_inv(0.5 * d, 0.5 * (N + 1 - d), v);
    }
    double z1 = 0.0;
    double z2 = 0.0;
    for (int i = 0; i < d; ++i) {
        const double z = rng.normal();
        if (i == 0) {
            z1 = z;
        }
        z2 += z * z;
    }
    const double g = rng.chi_square(double(N + 1 - d));
    const double scale2 = double(N) / (z2 + g);
    return d == 1 ? z1 * std::sqrt(scale2) : z2 * scale2;
}

/// Projects uniform points of Sigma^N to their first d coordinates and
/// measures the distance to the standard Gaussian: the first coordinate
/// against Phi when d = 1, the squared norm against chi^2_d otherwise.
inline PoincareResult poincare_test(int N, int d, std::int64_t n_samples, const RunOptions& opt,
                                    PoincareSampler sampler = PoincareSampler::Geometric)
{
    if (d < 1 || N <= d) {
        throw std::domain_error("poincare_test: need 1 <= d < N");
    }
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(n_samples));
    auto blocks = detail::run_blocks(n_samples, opt, true,
                                     [&](RngStream& rng) { return projected_sample(N, d, sampler, rng); });
    for (const auto& b : blocks) {
        stats.insert(stats.end(), b.values.begin(), b.values.end());
    }
    PoincareResult out;
    if (d == 1) {
        out.ks = ks_statistic(stats, standard_normal_cdf);
    } else {
        out.ks = ks_statistic(stats, [d](double r2) { return boost::math::gamma_p(0.5 * d, 0.5 * r2); });
    }
    // second moment of x_1, exactly N / (N + 1), from an independent stream
    RunOptions mopt = opt;
    mopt.stream = opt.stream + 1;
    out.second_moment = monte_carlo(n_samples, mopt, double(N) / double(N + 1), [&](RngStream& rng) {
        const double z = rng.normal();
        const double g = rng.chi_square(double(N));
        return double(N) * z * z / (z * z + g);
    });
    return out;
}

struct NuConvergenceRow {
    int N = 0;
    int k = 0;
    double s = 0.0;     // geodesic radius of D_N
    double nu = 0.0;    // nu_k(D_N)
    double limit = 0.0; // (2 pi)^{k/2} / (k! omega_k) gamma_k(D)
    double abs_error = 0.0;
    double rel_error = 0.0;
};

/// nu_k(D_N) against its limit. The relative error divides by |limit|, or by
/// the largest |limit_j| (j <= k_max) when the limit itself vanishes.
inline std::vector<NuConvergenceRow> nu_convergence(const gauss::CenteredBall& D, int k_max,
                                                    const std::vector<int>& N_list)
{
    gauss::validate(D);
    if (k_max < 0) {
        throw std::domain_error("nu_convergence: k_max must be nonnegative");
    }
    const auto g = gauss::gamma(D, k_max);
    std::vector<double> limits;
    double scale = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        limits.push_back(float_of(kin::nu_limit_constant(k)) * g.values[static_cast<std::size_t>(k)]);
        scale = std::max(scale, std::fabs(limits.back()));
    }
    std::vector<NuConvergenceRow> rows;
    for (int N : N_list) {
        if (N <= D.d || !(D.rho < std::sqrt(double(N)))) {
            throw std::domain_error("nu_convergence: need N > d and rho < sqrt(N)");
        }
        const ModelSet tube = lift_gauss_set(D, N);
        const auto sig = lk::sigma_values(tube);
        for (int k = 0; k <= k_max && k <= N; ++k) {
            NuConvergenceRow r;
            r.N = N;
            r.k = k;
            r.s = std::get<lk::SubsphereTube>(tube).s;
            r.nu = lk::basis_value(lk::Basis::Nu, k, sig);
            r.limit = limits[static_cast<std::size_t>(k)];
            r.abs_error = std::fabs(r.nu - r.limit);
            const double denom = std::fabs(r.limit) > 1e-12 * scale ? std::fabs(r.limit) : scale;
            r.rel_error = r.abs_error / denom;
            rows.push_back(r);
        }
    }
    return rows;
}

struct KinematicInequalityReport {
    McReport lhs; // E |sigma_k(C ∩ g D)|, prediction = rhs
    double rhs = 0.0;
    bool holds = false;
};

/// Monte Carlo check of  E_g |sigma_k(C ∩ g D)| <= 1/2 sum_{i+j=k} |sigma_i|(C) |sigma_j|(D)
/// for geodesic balls C, D of Sigma^N (radius <= (pi/2) sqrt N), or D = AmbientSphere.
inline KinematicInequalityReport kinematic_inequality_check(const ModelSet& C, const ModelSet& D, int k, int N,
                                                            std::int64_t n_rotations, const RunOptions& opt)
{
    const auto* c = std::get_if<lk::GeodesicBall>(&C);
    const auto* db = std::get_if<lk::GeodesicBall>(&D);
    const bool d_ambient = std::holds_alternative<lk::AmbientSphere>(D);
    if (!c || (!db && !d_ambient)) {
        throw std::invalid_argument("kinematic_inequality_check: C must be a geodesic ball, D a ball or the sphere");
    }
    if (lk::ambient_dimension(C) != N || lk::ambient_dimension(D) != N) {
        throw std::invalid_argument("kinematic_inequality_check: sets must live in Sigma^N");
    }
    if (k < 0 || k > N) {
        throw std::domain_error("kinematic_inequality_check: need 0 <= k <= N");
    }
    KinematicInequalityReport out;
    for (int i = 0; i <= k; ++i) {
        out.rhs += 0.5 * lk::abs_sigma(i, C) * lk::abs_sigma(k - i, D);
    }
    const double R = std::sqrt(double(N));
    const double th1 = c->r / R;
    const auto sig_c = lk::sigma_values(C);
    out.lhs = monte_carlo(n_rotations, opt, out.rhs, [&](RngStream& rng) {
        if (d_ambient) {
            return std::fabs(sig_c[static_cast<std::size_t>(k)]);
        }
        // the center of g D is uniform on S^N; only its angle to C's center matters
        const double z = rng.normal();
        const double g = rng.chi_square(double(N));
        const double delta = std::acos(std::clamp(z / std::sqrt(z * z + g), -1.0, 1.0));
        return std::fabs(lens_sigma(N, th1, db->r / R, delta, k)[static_cast<std::size_t>(k)]);
    });
    const double rel = out.lhs.estimate > 0.0 ? out.lhs.stderr_ / out.lhs.estimate : 0.0;
    out.holds = out.lhs.estimate <= out.rhs * (1.0 + 3.0 * rel) + 1e-14;
    return out;
}

} // namespace gkf::sim
