#pragma once

// Gaussian intrinsic volumes of model sets D in R^d:
//
//   gamma_0(D) = P(X in D),  gamma_k(D) = d^k/dr^k |_{r=0+} gamma_0(tube(D, r)),
//
// with X standard Gaussian, density (2 pi)^{-d/2} exp(-|x|^2 / 2); and the
// right-hand side of the Gaussian kinematic formula on unit-sphere sets.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gkf/kinematics/operators.hpp"
#include "gkf/lk_algebra/evaluate.hpp"
#include "gkf/scalar_ring.hpp"

namespace gkf::gauss {

/// {x : x_1 >= u}
struct HalfSpace {
    int d = 1;
    double u = 0.0;
};
/// {x : |x| <= rho}
struct CenteredBall {
    int d = 1;
    double rho = 1.0;
};
struct Origin {
    int d = 1;
};
struct FullSpace {
    int d = 1;
};

using GaussSet = std::variant<HalfSpace, CenteredBall, Origin, FullSpace>;

inline int dimension(const GaussSet& D)
{
    return std::visit([](const auto& x) { return x.d; }, D);
}

inline std::string describe(const GaussSet& D)
{
    char buf[96];
    if (const auto* h = std::get_if<HalfSpace>(&D)) {
        std::snprintf(buf, sizeof buf, "HalfSpace{d=%d, u=%.17g}", h->d, h->u);
    } else if (const auto* b = std::get_if<CenteredBall>(&D)) {
        std::snprintf(buf, sizeof buf, "CenteredBall{d=%d, rho=%.17g}", b->d, b->rho);
    } else if (const auto* o = std::get_if<Origin>(&D)) {
        std::snprintf(buf, sizeof buf, "Origin{d=%d}", o->d);
    } else {
        std::snprintf(buf, sizeof buf, "FullSpace{d=%d}", std::get<FullSpace>(D).d);
    }
    return buf;
}

inline void validate(const GaussSet& D)
{
    if (dimension(D) < 1) {
        throw std::domain_error(describe(D) + ": d must be at least 1");
    }
    if (const auto* b = std::get_if<CenteredBall>(&D); b && !(b->rho > 0.0)) {
        throw std::domain_error(describe(D) + ": rho must be positive");
    }
    if (const auto* h = std::get_if<HalfSpace>(&D); h && !std::isfinite(h->u)) {
        throw std::domain_error(describe(D) + ": threshold must be finite");
    }
}

/// Standard-Gaussian measure of tube(D, r), in any floating type supported
/// by boost.math (double for production, cpp_bin_float_50 for the oracle).
template <class Real>
Real gauss_measure_tube_as(const GaussSet& D, const Real& r)
{
    validate(D);
    if (r < 0) {
        throw std::domain_error("gauss_measure_tube: radius must be nonnegative");
    }
    using boost::math::erfc;
    using boost::math::gamma_p;
    if (const auto* h = std::get_if<HalfSpace>(&D)) {
        // Phi(r - u)
        const Real x = r - Real(h->u);
        return erfc(-x / boost::math::constants::root_two<Real>()) / 2;
    }
    if (const auto* b = std::get_if<CenteredBall>(&D)) {
        const Real s = Real(b->rho) + r;
        return gamma_p(Real(b->d) / 2, s * s / 2);
    }
    if (const auto* o = std::get_if<Origin>(&D)) {
        if (r == 0) {
            return Real(0);
        }
        return gamma_p(Real(o->d) / 2, r * r / 2);
    }
    return Real(1);
}

inline double gauss_measure_tube(const GaussSet& D, double r) { return gauss_measure_tube_as<double>(D, r); }

struct GammaVector {
    int d = 1;
    std::vector<double> values;
    std::vector<std::optional<PiScalar>> exact; // filled where closed-form
};

namespace detail {

/// Integer polynomial in s, coefficients by degree.
using Poly = std::vector<Integer>;

/// P_0 = s^{d-1}, P_{j+1} = P_j' - s P_j, so that
/// d^j/ds^j [s^{d-1} e^{-s^2/2}] = P_j(s) e^{-s^2/2}.
inline std::vector<Poly> radial_derivative_polys(int d, int count)
{
    std::vector<Poly> out;
    Poly p(static_cast<std::size_t>(d), Integer(0));
    p[static_cast<std::size_t>(d - 1)] = 1;
    for (int j = 0; j < count; ++j) {
        out.push_back(p);
        Poly q(p.size() + 1, Integer(0));
        for (std::size_t i = 1; i < p.size(); ++i) {
            q[i - 1] += p[i] * static_cast<long>(i);
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] -= p[i];
        }
        p = std::move(q);
    }
    return out;
}

inline double poly_at(const Poly& p, double s)
{
    double acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * s + p[i].get_d();
    }
    return acc;
}

/// Probabilists' Hermite polynomial He_n(x).
inline double hermite_he(int n, double x)
{
    double a = 1.0;
    double b = x;
    if (n == 0) {
        return a;
    }
    for (int k = 1; k < n; ++k) {
        const double c = x * b - k * a;
        a = b;
        b = c;
    }
    return b;
}

/// He_n(0): 0 for odd n, (-1)^{n/2} (n-1)!! for even n.
inline Rational hermite_he_at_zero(int n)
{
    if (n % 2 != 0) {
        return Rational(0);
    }
    Integer v(1);
    for (int i = n - 1; i > 1; i -= 2) {
        v *= i;
    }
    return Rational((n / 2) % 2 == 0 ? v : Integer(-v));
}

/// c_d = 2^{1 - d/2} / Gamma(d/2), the chi density normalizer.
inline PiScalar chi_normalizer(int d)
{
    return PiScalar::half_power(Rational(2), 2 - d) * gamma_half(d).inverse();
}

} // namespace detail

inline GammaVector gamma(const GaussSet& D, int k_max)
{
    validate(D);
    if (k_max < 0) {
        throw std::domain_error("gamma: k_max must be nonnegative");
    }
    GammaVector g;
    g.d = dimension(D);
    g.values.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    g.exact.assign(static_cast<std::size_t>(k_max) + 1, std::nullopt);
    auto set_exact = [&](int k, const PiScalar& x) {
        g.exact[static_cast<std::size_t>(k)] = x;
        g.values[static_cast<std::size_t>(k)] = float_of(x);
    };
    if (std::holds_alternative<FullSpace>(D)) {
        for (int k = 0; k <= k_max; ++k) {
            set_exact(k, PiScalar(k == 0 ? 1 : 0));
        }
        return g;
    }
    if (const auto* h = std::get_if<HalfSpace>(&D)) {
        const double phi = std::exp(-0.5 * h->u * h->u) / std::sqrt(2.0 * num::pi);
        g.values[0] = 0.5 * std::erfc(h->u / std::sqrt(2.0));
        for (int k = 1; k <= k_max; ++k) {
            g.values[static_cast<std::size_t>(k)] = detail::hermite_he(k - 1, h->u) * phi;
        }
        if (h->u == 0.0) {
            set_exact(0, PiScalar(rat(1, 2)));
            const PiScalar inv_root_two_pi = PiScalar::pi_power(-1) * PiScalar::half_power(Rational(2), -1);
            for (int k = 1; k <= k_max; ++k) {
                set_exact(k, inv_root_two_pi * detail::hermite_he_at_zero(k - 1));
            }
        }
        return g;
    }
    const int d = g.d;
    const double rho = std::holds_alternative<CenteredBall>(D) ? std::get<CenteredBall>(D).rho : 0.0;
    const PiScalar cd = detail::chi_normalizer(d);
    const auto polys = detail::radial_derivative_polys(d, k_max);
    g.values[0] = gauss_measure_tube(D, 0.0);
    for (int k = 1; k <= k_max; ++k) {
        const auto& p = polys[static_cast<std::size_t>(k - 1)];
        if (rho == 0.0) {
            set_exact(k, cd * Rational(p[0]));
        } else {
            g.values[static_cast<std::size_t>(k)] = float_of(cd) * detail::poly_at(p, rho) * std::exp(-0.5 * rho * rho);
        }
    }
    if (rho == 0.0) {
        set_exact(0, PiScalar(0));
    }
    return g;
}

namespace detail {

/// Exact weights w_0..w_M with f^{(k)}(0) ~ h^{-k} sum_i w_i f(i h), exact for
/// polynomials of degree <= M (forward, one-sided).
inline std::vector<Rational> forward_stencil(int k, int M)
{
    const std::size_t n = static_cast<std::size_t>(M) + 1;
    // Solve sum_i w_i i^p = k! [p == k], p = 0..M.
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t i = 0; i < n; ++i) {
            Integer v(1);
            for (std::size_t e = 0; e < p; ++e) {
                v *= static_cast<unsigned long>(i);
            }
            a[p][i] = Rational(v);
        }
        a[p][n] = (p == static_cast<std::size_t>(k)) ? factorial(k) : Rational(0);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (a[piv][c] == 0) {
            ++piv;
        }
        std::swap(a[piv], a[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != c && a[r][c] != 0) {
                const Rational f = a[r][c] / a[c][c];
                for (std::size_t j = c; j <= n; ++j) {
                    a[r][j] -= f * a[c][j];
                }
            }
        }
    }
    std::vector<Rational> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = a[i][n] / a[i][i];
    }
    return w;
}

} // namespace detail

/// k-th one-sided derivative of gauss_measure_tube at r = 0 by a forward
/// stencil on k + 7 nodes, evaluated in 50-digit arithmetic so that the
/// truncation error O(h^7) dominates rounding.
inline double gamma_fd_oracle(const GaussSet& D, int k, double h = 1e-3)
{
    using Big = boost::multiprecision::cpp_bin_float_50;
    if (k < 0 || k > 8) {
        throw std::domain_error("gamma_fd_oracle: need 0 <= k <= 8");
    }
    if (!(h > 0.0) || h > 0.1) {
        throw std::domain_error("gamma_fd_oracle: step must lie in (0, 0.1]");
    }
    if (k == 0) {
        return gauss_measure_tube(D, 0.0);
    }
    const int M = k + 6;
    const auto w = detail::forward_stencil(k, M);
    const Big hb(h);
    Big acc = 0;
    for (int i = 0; i <= M; ++i) {
        const Rational& wi = w[static_cast<std::size_t>(i)];
        if (wi == 0) {
            continue;
        }
        const Big num(wi.get_num().get_str());
        const Big den(wi.get_den().get_str());
        acc += num / den * gauss_measure_tube_as<Big>(D, hb * i);
    }
    acc /= boost::multiprecision::pow(hb, k);
    return static_cast<double>(acc);
}

/// sum_k (pi/2)^{k/2} / (k! omega_k) t^{k+m}(A) gamma_k(D), for a unit-sphere set A.
inline double gkf_predict(const lk::ModelSet& A, const GaussSet& D, int m)
{
    lk::validate(A);
    validate(D);
    if (!lk::is_unit_side(A)) {
        throw std::invalid_argument("gkf_predict: A must be a unit-sphere set");
    }
    const int n = lk::ambient_dimension(A);
    if (m < 0 || m > n) {
        throw std::domain_error("gkf_predict: need 0 <= m <= n");
    }
    const GammaVector g = gamma(D, n - m);
    double acc = 0.0;
    for (int k = 0; k + m <= n; ++k) {
        const lk::Evaluation t = lk::unit_lk(k + m, A);
        if (t.value == 0.0) {
            continue;
        }
        acc += float_of(kin::gkf_coefficient(k)) * t.value * g.values[static_cast<std::size_t>(k)];
    }
    return acc;
}

} // namespace gkf::gauss
