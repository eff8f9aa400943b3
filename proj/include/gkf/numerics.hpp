#pragma once

// Floating-point helpers shared by the float evaluation paths: log-scale
// sphere constants, signed log-sum accumulation, and adaptive quadrature.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace gkf::num {

inline constexpr double pi = std::numbers::pi;

inline double log_omega(int n)
{
    return 0.5 * n * std::log(pi) - std::lgamma(0.5 * n + 1.0);
}

/// log of the volume of the unit n-sphere, 2 pi^{(n+1)/2} / Gamma((n+1)/2)
inline double log_alpha(int n)
{
    return std::log(2.0) + 0.5 * (n + 1) * std::log(pi) - std::lgamma(0.5 * (n + 1));
}

inline double log_binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline double omega(int n) { return std::exp(log_omega(n)); }
inline double alpha(int n) { return std::exp(log_alpha(n)); }

/// Sum of terms sign * exp(log_magnitude), accumulated with a running scale.
class SignedLogSum
{
public:
    void add(double log_magnitude, int sign)
    {
        if (sign == 0 || log_magnitude == -std::numeric_limits<double>::infinity()) {
            return;
        }
        if (empty_) {
            scale_ = log_magnitude;
            empty_ = false;
        } else if (log_magnitude > scale_ + 600.0) {
            sum_ *= std::exp(scale_ - log_magnitude);
            scale_ = log_magnitude;
        }
        sum_ += sign * std::exp(log_magnitude - scale_);
    }

    double value() const { return empty_ ? 0.0 : sum_ * std::exp(scale_); }

private:
    bool empty_ = true;
    double scale_ = 0.0;
    double sum_ = 0.0;
};

/// Sign and log|x| of x^e for integer e >= 0 (0^0 = 1).
struct SignedLog {
    double log_abs;
    int sign;
};

inline SignedLog signed_log_pow(double x, int e)
{
    if (e == 0) {
        return {0.0, 1};
    }
    if (x == 0.0) {
        return {-std::numeric_limits<double>::infinity(), 0};
    }
    const int s = (x < 0.0 && e % 2 != 0) ? -1 : 1;
    return {e * std::log(std::fabs(x)), s};
}

/// Adaptive Gauss-Kronrod on [a, b] to an absolute tolerance.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12)
{
    if (b <= a) {
        return 0.0;
    }
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, a, b, 10, 1e-13, &err);
    if (!(err <= abs_tol) && !(err <= 1e-12 * std::fabs(v))) {
        throw std::runtime_error("integrate: tolerance not reached");
    }
    return v;
}

/// Fraction of the unit sphere S^n (n >= 1) within angle theta of a pole,
/// theta in [0, pi].
inline double cap_fraction(int n, double theta)
{
    if (theta <= 0.0) {
        return 0.0;
    }
    if (theta >= pi) {
        return 1.0;
    }
    const double s2 = std::sin(theta) * std::sin(theta);
    const double half = 0.5 * boost::math::ibeta(0.5 * n, 0.5, s2);
    return theta <= 0.5 * pi ? half : 1.0 - half;
}

/// Fraction of S^n (n >= 1) on which <y, e> >= t for a fixed unit e.
inline double cap_fraction_by_height(int n, double t)
{
    if (t <= -1.0) {
        return 1.0;
    }
    if (t >= 1.0) {
        return 0.0;
    }
    return cap_fraction(n, std::acos(t));
}

} // namespace gkf::num
