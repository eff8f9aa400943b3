#pragma once

// Functionals of A ∩ F^{-1} D for a linear map F and supported model pairs.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>

#include "gkf/gaussian_volumes.hpp"
#include "gkf/lk_algebra/model_set.hpp"
#include "gkf/simulation/linear_maps.hpp"

namespace gkf::sim {

using gauss::GaussSet;
using lk::ModelSet;

namespace detail {

inline int sphere_chi(int n) { return n % 2 == 0 ? 2 : 0; }

/// chi of {x in S^n : <x, xi> >= u}, intersected with the cap of angular
/// radius theta about e_0 when `cap_theta` is given (theta <= pi/2).
inline int chi_cap_halfspace(int n, const Eigen::VectorXd& xi, double u, const double* cap_theta)
{
    const double a = xi.norm();
    if (a < u || a == 0.0) {
        // empty, unless u <= 0 = a, where the whole sphere qualifies
        if (a == 0.0 && u <= 0.0) {
            return cap_theta ? 1 : sphere_chi(n);
        }
        return 0;
    }
    if (u <= -a) {
        return cap_theta ? 1 : sphere_chi(n);
    }
    const double beta = std::acos(std::clamp(u / a, -1.0, 1.0)); // cap radius about xi / a
    if (!cap_theta) {
        return 1;
    }
    const double theta = *cap_theta;
    const double delta = std::acos(std::clamp(xi(0) / a, -1.0, 1.0)); // angle between centers
    if (beta <= 0.5 * num::pi) {
        return delta <= theta + beta ? 1 : 0;
    }
    // The half-space cap is the complement of an open ball B' of radius
    // pi - beta about -xi / a, whose center is at angle pi - delta from e_0.
    const double rb = num::pi - beta;
    const double db = num::pi - delta;
    if (db + theta < rb) {
        return 0; // B' swallows the cap
    }
    if (db + rb < theta) {
        return sphere_chi(n - 1); // B' sits inside the cap: an annulus
    }
    return 1;
}

/// chi of {x in S^n : |F x|^2 <= rho^2} by the Morse count of x' F'F x on S^n.
inline int chi_quadratic(const Eigen::MatrixXd& F, double rho)
{
    const int d = static_cast<int>(F.rows());
    const int n = static_cast<int>(F.cols()) - 1;
    std::vector<double> positive;
    int zeros = 0;
    if (d <= n + 1) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F * F.transpose(), Eigen::EigenvaluesOnly);
        for (int i = 0; i < d; ++i) {
            positive.push_back(es.eigenvalues()(i));
        }
        zeros = n + 1 - d;
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F.transpose() * F, Eigen::EigenvaluesOnly);
        for (int i = 0; i <= n; ++i) {
            positive.push_back(es.eigenvalues()(i));
        }
    }
    std::sort(positive.begin(), positive.end());
    const double level = rho * rho;
    int chi = 0;
    if (zeros > 0) {
        chi += sphere_chi(zeros - 1); // minimum stratum: unit sphere of the null space
    }
    for (std::size_t j = 0; j < positive.size(); ++j) {
        const int index = zeros + static_cast<int>(j);
        if (positive[j] <= level) {
            chi += index % 2 == 0 ? 2 : -2;
        }
    }
    return chi;
}

} // namespace detail

/// Euler characteristic of A ∩ F^{-1} D. Supported pairs:
///   UnitSphere or UnitCap with HalfSpace (first row of F is the process);
///   UnitSphere with CenteredBall, Origin or FullSpace.
inline int chi_intersection(const ModelSet& A, const GaussSet& D, const LinearMapSample& F)
{
    lk::validate(A);
    gauss::validate(D);
    const int n = lk::ambient_dimension(A);
    if (F.entries.cols() != n + 1 || F.entries.rows() != gauss::dimension(D)) {
        throw std::invalid_argument("chi_intersection: map shape does not match (A, D)");
    }
    const auto* sphere = std::get_if<lk::UnitSphere>(&A);
    const auto* cap = std::get_if<lk::UnitCap>(&A);
    if (const auto* h = std::get_if<gauss::HalfSpace>(&D); h && (sphere || cap)) {
        const Eigen::VectorXd xi = F.entries.row(0).transpose();
        return detail::chi_cap_halfspace(n, xi, h->u, cap ? &cap->theta : nullptr);
    }
    if (sphere) {
        if (std::holds_alternative<gauss::FullSpace>(D)) {
            return detail::sphere_chi(n);
        }
        if (const auto* b = std::get_if<gauss::CenteredBall>(&D)) {
            return detail::chi_quadratic(F.entries, b->rho);
        }
        if (std::holds_alternative<gauss::Origin>(D)) {
            // the null space of F on S^n, generically a great (n - d)-sphere
            return gauss::dimension(D) <= n ? detail::sphere_chi(n - gauss::dimension(D)) : 0;
        }
    }
    throw std::invalid_argument("chi_intersection: unsupported pair " + lk::describe(A) + " / " + gauss::describe(D));
}

/// Uniform point on a unit-sphere model set, as a vector in R^{n+1}.
inline Eigen::VectorXd uniform_point(const ModelSet& A, RngStream& rng)
{
    const int n = lk::ambient_dimension(A);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n + 1);
    auto unit_vector = [&](int dim) {
        Eigen::VectorXd v(dim);
        do {
            for (int i = 0; i < dim; ++i) {
                v(i) = rng.normal();
            }
        } while (v.squaredNorm() == 0.0);
        return Eigen::VectorXd(v / v.norm());
    };
    if (std::holds_alternative<lk::UnitSphere>(A)) {
        return unit_vector(n + 1);
    }
    if (const auto* g = std::get_if<lk::UnitGreatSubsphere>(&A)) {
        x.head(g->m + 1) = unit_vector(g->m + 1);
        return x;
    }
    if (const auto* c = std::get_if<lk::UnitCap>(&A)) {
        // polar angle phi has density proportional to sin^{n-1} phi on [0, theta];
        // sin^2 phi = I^{-1}(v) for the regularized incomplete beta I(n/2, 1/2).
        const double top = boost::math::ibeta(0.5 * n, 0.5, std::pow(std::sin(c->theta), 2));
        const double v = rng.uniform() * top;
        const double s2 = v <= 0.0 ? 0.0 : boost::math::ibeta_inv(0.5 * n, 0.5, v);
        const double sphi = std::sqrt(s2);
        x(0) = std::sqrt(std::max(0.0, 1.0 - s2));
        if (n >= 1) {
            x.tail(n) = sphi * unit_vector(n);
        }
        return x;
    }
    throw std::invalid_argument("uniform_point: not a unit-sphere set " + lk::describe(A));
}

inline bool in_gauss_set(const GaussSet& D, const Eigen::VectorXd& y)
{
    if (const auto* h = std::get_if<gauss::HalfSpace>(&D)) {
        return y(0) >= h->u;
    }
    if (const auto* b = std::get_if<gauss::CenteredBall>(&D)) {
        return y.squaredNorm() <= b->rho * b->rho;
    }
    if (std::holds_alternative<gauss::Origin>(D)) {
        return y.squaredNorm() == 0.0;
    }
    return true;
}

/// Hit-or-miss estimate of vol(A ∩ F^{-1} D) / vol(A).
inline double volume_fraction(const ModelSet& A, const GaussSet& D, const LinearMapSample& F, RngStream& rng,
                              int n_points)
{
    lk::validate(A);
    gauss::validate(D);
    if (!lk::is_unit_side(A)) {
        throw std::invalid_argument("volume_fraction: A must be a unit-sphere set");
    }
    if (n_points < 1) {
        throw std::domain_error("volume_fraction: need at least one point");
    }
    if (std::holds_alternative<gauss::FullSpace>(D)) {
        return 1.0;
    }
    int hits = 0;
    for (int i = 0; i < n_points; ++i) {
        const Eigen::VectorXd x = uniform_point(A, rng);
        hits += in_gauss_set(D, F.entries * x) ? 1 : 0;
    }
    return double(hits) / n_points;
}

} // namespace gkf::sim
