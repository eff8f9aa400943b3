#pragma once

// The kinematic operator p_N of Sigma^N (probability Haar measure on O(N+1)):
//
//   p_N(sigma_k) = 1/2 sum_{i+j=k} sigma_i (x) sigma_j
//   p_N(tau_k)   = 2^{-N-1} N^{-N/2} sum_{i+j=N+k} tau_i (x) tau_j
//   p_N(u^m)     = sum_k u^{m+k} (x) nu_k
//
// together with the pairing of tensors against pairs of model sets and the
// tube-volume identity vol(tube(D_N, r)) = sum_k u^k(Sigma^N_r) nu_k(D_N).

#include <cmath>
#include <stdexcept>

#include "gkf/kinematics/nu_table.hpp"
#include "gkf/kinematics/tensor.hpp"
#include "gkf/lk_algebra/evaluate.hpp"
#include "gkf/lk_algebra/valuation.hpp"
#include "gkf/numerics.hpp"

namespace gkf::kin {

using lk::Evaluation;
using lk::ModelSet;
using lk::ValuationVector;

inline KinematicTensor p_sigma(int k, int N)
{
    check_exact_N(N);
    if (k < 0 || k > N) {
        throw std::domain_error("p_sigma: need 0 <= k <= N");
    }
    KinematicTensor t(N, Basis::Sigma, Basis::Sigma);
    for (int i = 0; i <= k; ++i) {
        t(i, k - i) = PiScalar(rat(1, 2));
    }
    return t;
}

inline KinematicTensor p_tau(int k, int N)
{
    check_exact_N(N);
    if (k < 0 || k > N) {
        throw std::domain_error("p_tau: need 0 <= k <= N");
    }
    KinematicTensor t(N, Basis::Tau, Basis::Tau);
    // 2^{-N-1} N^{-N/2}
    Rational two_pow(1);
    two_pow /= Rational(Integer(1) << static_cast<mp_bitcnt_t>(N + 1));
    const PiScalar c = PiScalar::half_power(Rational(N), -N) * two_pow;
    for (int i = k; i <= N; ++i) {
        t(i, N + k - i) = c;
    }
    return t;
}

/// Re-express both legs of a tensor in new bases: M' = A M B^T, where the
/// columns of A (B) are the old left (right) basis elements in the new basis.
inline KinematicTensor convert_tensor(const KinematicTensor& t, Basis left, Basis right)
{
    KinematicTensor out(t.N, left, right);
    const ExactMatrix a = lk::change_of_basis_matrix(t.N, t.left, left);
    const ExactMatrix b = lk::change_of_basis_matrix(t.N, t.right, right);
    out.matrix = a * t.matrix * b.transposed();
    return out;
}

/// p_N applied to an arbitrary vector, by linearity over the sigma basis.
inline KinematicTensor p_apply(const ValuationVector& v)
{
    const ValuationVector s = lk::change_basis(v, Basis::Sigma);
    KinematicTensor out(v.N, Basis::Sigma, Basis::Sigma);
    for (int k = 0; k <= v.N; ++k) {
        if (s[k].is_zero()) {
            continue;
        }
        KinematicTensor term = p_sigma(k, v.N);
        term *= s[k];
        out += term;
    }
    return out;
}

/// sum_k u^{m+k} (x) nu_k as a U (x) Sigma tensor (nu_k written in sigma).
inline KinematicTensor p_u_power(int m, int N)
{
    check_exact_N(N);
    if (m < 0 || m > N) {
        throw std::domain_error("p_u_power: need 0 <= m <= N");
    }
    const auto table = detail::cached_nu_table(N);
    KinematicTensor t(N, Basis::U, Basis::Sigma);
    for (int k = 0; m + k <= N; ++k) {
        for (int i = 0; i <= N; ++i) {
            t(m + k, i) = (*table)[k][static_cast<std::size_t>(i)];
        }
    }
    return t;
}

/// Bilinear pairing T(A, B) = sum_ij T_ij left_i(A) right_j(B).
inline Evaluation evaluate_tensor(const KinematicTensor& t, const ModelSet& a, const ModelSet& b)
{
    for (const ModelSet* s : {&a, &b}) {
        lk::validate(*s);
        if (lk::is_unit_side(*s) || lk::ambient_dimension(*s) != t.N) {
            throw std::invalid_argument("evaluate_tensor: set does not live in Sigma^N: " + lk::describe(*s));
        }
    }
    const auto ea = lk::exact_sigma_values(a);
    const auto eb = lk::exact_sigma_values(b);
    if (ea && eb) {
        const KinematicTensor s = convert_tensor(t, Basis::Sigma, Basis::Sigma);
        PiScalar acc;
        for (int i = 0; i <= t.N; ++i) {
            const PiScalar& x = (*ea)[static_cast<std::size_t>(i)];
            if (x.is_zero()) {
                continue;
            }
            for (int j = 0; j <= t.N; ++j) {
                const PiScalar& y = (*eb)[static_cast<std::size_t>(j)];
                if (!y.is_zero() && !s(i, j).is_zero()) {
                    acc += s(i, j) * x * y;
                }
            }
        }
        return {float_of(acc), acc};
    }
    const auto sa = lk::sigma_values(a);
    const auto sb = lk::sigma_values(b);
    std::vector<double> left(static_cast<std::size_t>(t.N) + 1);
    std::vector<double> right(static_cast<std::size_t>(t.N) + 1);
    for (int i = 0; i <= t.N; ++i) {
        left[static_cast<std::size_t>(i)] = lk::basis_value(t.left, i, sa);
        right[static_cast<std::size_t>(i)] = lk::basis_value(t.right, i, sb);
    }
    double acc = 0.0;
    for (int i = 0; i <= t.N; ++i) {
        for (int j = 0; j <= t.N; ++j) {
            if (!t(i, j).is_zero()) {
                acc += float_of(t(i, j)) * left[static_cast<std::size_t>(i)] * right[static_cast<std::size_t>(j)];
            }
        }
    }
    return {acc, std::nullopt};
}

/// Float pairing p_N(u^m)(A, B) = sum_k u^{m+k}(A) nu_k(B) without building
/// a dense tensor; usable well beyond the exact cap.
inline double p_u_power_pairing(int m, const ModelSet& a, const ModelSet& b)
{
    const int N = lk::ambient_dimension(a);
    if (lk::is_unit_side(a) || lk::is_unit_side(b) || lk::ambient_dimension(b) != N) {
        throw std::invalid_argument("p_u_power_pairing: both sets must live in the same Sigma^N");
    }
    if (m < 0 || m > N) {
        throw std::domain_error("p_u_power_pairing: need 0 <= m <= N");
    }
    const auto sa = lk::sigma_values(a);
    const auto sb = lk::sigma_values(b);
    double acc = 0.0;
    for (int k = 0; m + k <= N; ++k) {
        acc += lk::basis_value(Basis::U, m + k, sa) * lk::basis_value(Basis::Nu, k, sb);
    }
    return acc;
}

struct TubeIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Normalized volume of the tube of radius s + r about a great (N-d)-sphere,
/// by quadrature, against sum_k u^k(Sigma^N_r) nu_k(SubsphereTube{N, d, s}).
inline TubeIdentity tube_volume_identity(int N, int d, double s, double r)
{
    const double R = std::sqrt(double(N));
    if (!(r >= 0.0) || !(s >= 0.0) || !(s + r < 0.5 * num::pi * R)) {
        throw std::domain_error("tube_volume_identity: need r, s >= 0 and s + r < (pi/2) sqrt(N)");
    }
    if (d < 1 || d > N) {
        throw std::domain_error("tube_volume_identity: need 1 <= d <= N");
    }
    const double th = (s + r) / R;
    const double c = std::exp(num::log_alpha(d - 1) + num::log_alpha(N - d) - num::log_alpha(N));
    const double integral = num::integrate(
        [&](double x) { return std::pow(std::sin(x), d - 1) * std::pow(std::cos(x), N - d); }, 0.0, th, 1e-14);
    TubeIdentity out;
    out.lhs = c * integral;
    out.rhs = p_u_power_pairing(0, lk::GeodesicBall{N, r}, lk::SubsphereTube{N, d, s});
    return out;
}

/// (pi/2)^{k/2} / (k! omega_k), the weight of t^{k+m}(A) gamma_k(D) in the
/// Gaussian kinematic formula.
inline PiScalar gkf_coefficient(int k)
{
    if (k < 0) {
        throw std::domain_error("gkf_coefficient: k must be nonnegative");
    }
    return PiScalar::pi_power(k) * PiScalar::half_power(Rational(2), -k) * omega(k).inverse() *
           Rational(1 / factorial(k));
}

/// (2 pi)^{k/2} / (k! omega_k), the limit ratio nu_k(D_N) / gamma_k(D).
inline PiScalar nu_limit_constant(int k)
{
    if (k < 0) {
        throw std::domain_error("nu_limit_constant: k must be nonnegative");
    }
    return PiScalar::pi_power(k) * PiScalar::half_power(Rational(2), k) * omega(k).inverse() *
           Rational(1 / factorial(k));
}

} // namespace gkf::kin
