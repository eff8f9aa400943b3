#pragma once

// Sigma values of the intersection of two geodesic balls of the unit sphere
// S^N (a convex spherical lens), used for kinematic spot checks.
//
// For a proper lens the boundary consists of two pieces of the cap boundaries
// and a ridge R = ∂C_1 ∩ ∂C_2, a round (N-2)-sphere of euclidean radius rho_R.
// Across the ridge the outward normal sweeps an arc of angle beta from n_1 to
// n_2, and the curvature of R in the direction n(phi) is
//   lambda(phi) = (sin(beta - phi) cot th_1 + sin(phi) cot th_2) / sin(beta).
// With these, for i >= 1,
//   sigma_i = 2 / (alpha_{N-i} alpha_{i-1}) [ sum over faces of
//             binom(N-1, i-1) cot^{i-1} th_k area_k
//           + alpha_{N-2} rho_R^{N-2} binom(N-2, i-2) int_0^beta lambda^{i-2} ]
// and sigma_0 is twice the volume fraction.

#include <cmath>
#include <vector>

#include "gkf/lk_algebra/model_set.hpp"
#include "gkf/numerics.hpp"

namespace gkf::sim {

/// All sigma_0 .. sigma_N, or only sigma_only when it is nonnegative (the
/// other entries are then left at zero).
inline std::vector<double> lens_sigma(int N, double th1, double th2, double delta, int sigma_only = -1)
{
    if (N < 2) {
        throw std::domain_error("lens_sigma: need N >= 2");
    }
    const std::size_t n = static_cast<std::size_t>(N) + 1;
    if (delta >= th1 + th2) {
        return std::vector<double>(n, 0.0);
    }
    const double R = std::sqrt(double(N));
    if (delta <= std::fabs(th1 - th2)) {
        return lk::sigma_values(lk::GeodesicBall{N, std::min(th1, th2) * R});
    }
    std::vector<double> sig(n, 0.0);
    const double cd = std::cos(delta);
    const double sd = std::sin(delta);

    if (sigma_only <= 0) {
        // volume fraction: slices at angle phi from c_1 are (N-1)-spheres, of
        // which the part with <w, e> >= t(phi) lies in C_2. That part vanishes
        // like (phi - lo)^{(N-1)/2} at the lower end; phi = lo + w v^2 smooths it.
        const double lo = std::fabs(delta - th2);
        const double w = th1 - lo;
        auto slice = [&](double v) {
            const double phi = lo + w * v * v;
            const double t = (std::cos(th2) - std::cos(phi) * cd) / (std::sin(phi) * sd);
            return 2.0 * w * v * std::pow(std::sin(phi), N - 1) * num::cap_fraction_by_height(N - 1, t);
        };
        const double partial = num::integrate(slice, 0.0, 1.0, 1e-11);
        double vol = std::exp(num::log_alpha(N - 1) - num::log_alpha(N)) * partial;
        if (delta < th2) {
            vol += num::cap_fraction(N, lo);
        }
        sig[0] = 2.0 * vol;
    }
    if (sigma_only == 0) {
        return sig;
    }

    // face fractions: part of ∂C_1 inside C_2 and vice versa
    auto face_fraction = [&](double ta, double tb) {
        const double t = (std::cos(tb) - std::cos(ta) * cd) / (std::sin(ta) * sd);
        return num::cap_fraction_by_height(N - 1, t);
    };
    const double f1 = face_fraction(th1, th2);
    const double f2 = face_fraction(th2, th1);

    const double a = (std::cos(th1) - cd * std::cos(th2)) / (sd * sd);
    const double b = (std::cos(th2) - cd * std::cos(th1)) / (sd * sd);
    const double rho2 = std::max(0.0, 1.0 - (a * std::cos(th1) + b * std::cos(th2)));
    const double cos_beta = (cd - std::cos(th1) * std::cos(th2)) / (std::sin(th1) * std::sin(th2));
    const double beta = std::acos(std::clamp(cos_beta, -1.0, 1.0));
    const double sb = std::sin(beta);
    const double k1 = 1.0 / std::tan(th1);
    const double k2 = 1.0 / std::tan(th2);
    auto lambda = [&](double phi) { return (std::sin(beta - phi) * k1 + std::sin(phi) * k2) / sb; };

    for (int i = 1; i <= N; ++i) {
        if (sigma_only >= 0 && i != sigma_only) {
            continue;
        }
        const double norm = std::log(2.0) - num::log_alpha(N - i) - num::log_alpha(i - 1);
        double acc = 0.0;
        for (auto [th, frac] : {std::pair{th1, f1}, std::pair{th2, f2}}) {
            if (frac <= 0.0) {
                continue;
            }
            const double l = norm + num::log_binomial(N - 1, i - 1) + num::log_alpha(N - 1) +
                             (N - i) * std::log(std::sin(th)) + (i - 1 == 0 ? 0.0 : (i - 1) * std::log(std::cos(th)));
            acc += frac * std::exp(l);
        }
        if (i >= 2) {
            const int p = i - 2;
            // phi = beta s keeps the integrand O(1) when the ridge angle is tiny
            const double ridge =
                beta * num::integrate([&](double s) { return std::pow(lambda(beta * s), p); }, 0.0, 1.0);
            const double l = norm + num::log_alpha(N - 2) + 0.5 * (N - 2) * std::log(rho2) + num::log_binomial(N - 2, p);
            acc += std::exp(l) * ridge;
        }
        sig[static_cast<std::size_t>(i)] = acc;
    }
    return sig;
}

} // namespace gkf::sim
