#pragma once

// Evaluation of invariant valuations on model sets.
//
// Sigma^N-side sets are measured through their sigma values (see
// model_set.hpp); every other basis element is a fixed combination of those.
// Unit-sphere sets are measured by their intrinsic Lipschitz-Killing numbers,
// computed from the euclidean tube polynomial of the unit sphere and, for
// caps, by rescaling a geodesic ball of Sigma^n.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gkf/kinematics/nu_table.hpp"
#include "gkf/lk_algebra/model_set.hpp"
#include "gkf/lk_algebra/valuation.hpp"

namespace gkf::lk {

struct Evaluation {
    double value = 0.0;
    std::optional<PiScalar> exact;
};

/// mu_k of the euclidean unit ball B^N: binom(N, k) omega_N / omega_{N-k}.
inline PiScalar euclidean_ball_mu(int N, int k)
{
    if (k < 0 || k > N) {
        throw std::domain_error("euclidean_ball_mu: need 0 <= k <= N");
    }
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(k));
    return omega(N) * omega(N - k).inverse() * Rational(b);
}

/// t^k(S^n_1), read off vol(tube(S^n, rho)) = omega_{n+1}((1+rho)^{n+1} - (1-rho)^{n+1})
/// = sum_k mu_k omega_{n+1-k} rho^{n+1-k}, and t^k = k! omega_k / pi^k mu_k.
inline PiScalar lk_unit_sphere(int n, int k)
{
    if (n < 0 || k < 0 || k > n) {
        throw std::domain_error("lk_unit_sphere: need 0 <= k <= n");
    }
    if ((n - k) % 2 != 0) {
        return {};
    }
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n + 1), static_cast<unsigned long>(k));
    const PiScalar mu = omega(n + 1) * omega(n + 1 - k).inverse() * Rational(2 * b);
    return mu * omega(k) * PiScalar::pi_power(-2 * k) * factorial(k);
}

/// Float value of the i-th element of basis b on a set with sigma values sig.
inline double basis_value(Basis b, int i, const std::vector<double>& sig)
{
    const int N = static_cast<int>(sig.size()) - 1;
    if (i < 0 || i > N) {
        throw std::out_of_range("basis_value: index out of range");
    }
    auto s = [&](int j) { return sig[static_cast<std::size_t>(j)]; };
    const double scale = 0.5 * i * std::log(4.0 * N);
    auto u_value = [&](int k) {
        // u^k = sum_l binom(l + k/2, l) sigma_{N-k-2l}
        double acc = 0.0;
        for (int l = 0; k + 2 * l <= N; ++l) {
            const double c = std::exp(std::lgamma(l + 0.5 * k + 1.0) - std::lgamma(l + 1.0) - std::lgamma(0.5 * k + 1.0));
            acc += c * s(N - k - 2 * l);
        }
        return acc;
    };
    switch (b) {
    case Basis::Sigma:
        return s(i);
    case Basis::Tau:
        return std::exp(scale) * s(N - i);
    case Basis::U:
        return u_value(i);
    case Basis::T:
        return std::exp(scale) * u_value(i);
    case Basis::Mu:
        return std::exp(scale + i * std::log(num::pi) - std::lgamma(i + 1.0) - num::log_omega(i)) * u_value(i);
    case Basis::Phi: {
        double acc = 0.0;
        for (int j = 0; i + 2 * j <= N; ++j) {
            acc += s(N - i - 2 * j);
        }
        return std::exp(scale) * acc;
    }
    case Basis::Nu: {
        double acc = 0.0;
        for (int j = i; j >= 0; j -= 2) {
            acc += float_of(kin::nu_sigma_coefficient(i, j)) * s(j);
        }
        return acc;
    }
    }
    throw std::invalid_argument("basis_value: unknown basis");
}

/// t^k of a unit-sphere set. Caps use t^k(cap_theta in S^n) = 2^k u^k(Sigma^n_{theta sqrt n}).
inline Evaluation unit_lk(int k, const ModelSet& set)
{
    validate(set);
    if (const auto* s = std::get_if<UnitSphere>(&set)) {
        const PiScalar x = lk_unit_sphere(s->n, k);
        return {float_of(x), x};
    }
    if (const auto* g = std::get_if<UnitGreatSubsphere>(&set)) {
        if (k > g->n) {
            throw std::domain_error("unit_lk: k exceeds the ambient dimension");
        }
        const PiScalar x = k > g->m ? PiScalar() : lk_unit_sphere(g->m, k);
        return {float_of(x), x};
    }
    if (const auto* c = std::get_if<UnitCap>(&set)) {
        if (k < 0 || k > c->n) {
            throw std::domain_error("unit_lk: need 0 <= k <= n");
        }
        const auto sig = sigma_values(GeodesicBall{c->n, c->theta * std::sqrt(double(c->n))});
        return {std::ldexp(basis_value(Basis::U, k, sig), k), std::nullopt};
    }
    throw std::invalid_argument("unit_lk: not a unit-sphere set");
}

/// Linear evaluation of v on a model set. Exact when the set's sigma values
/// (or, for unit-sphere sets, LK numbers) are closed-form and N is within the
/// exact-conversion cap.
inline Evaluation evaluate(const ValuationVector& v, const ModelSet& set)
{
    validate(set);
    if (ambient_dimension(set) != v.N) {
        throw std::invalid_argument("evaluate: vector dimension " + std::to_string(v.N) + " does not match " +
                                    describe(set));
    }
    const bool exact_ok = v.N <= kin::tensor_limits().max_exact_N;
    if (is_unit_side(set)) {
        ValuationVector t;
        if (v.basis == Basis::T) {
            t = v;
        } else if (exact_ok) {
            t = change_basis(v, Basis::T);
        } else if (v.basis == Basis::U) {
            t = v;
            for (int k = 0; k <= v.N; ++k) {
                t[k] = v[k] * detail::scale_power(v.N, -k);
            }
        } else {
            throw std::domain_error("evaluate: unit-sphere evaluation needs T or U coordinates at this N");
        }
        Evaluation out;
        bool all_exact = true;
        PiScalar ex;
        for (int k = 0; k <= v.N; ++k) {
            if (t[k].is_zero()) {
                continue;
            }
            const Evaluation e = unit_lk(k, set);
            out.value += float_of(t[k]) * e.value;
            if (e.exact) {
                ex += t[k] * *e.exact;
            } else {
                all_exact = false;
            }
        }
        if (all_exact) {
            out.exact = ex;
            out.value = float_of(ex);
        }
        return out;
    }
    if (exact_ok) {
        if (auto es = exact_sigma_values(set)) {
            const ValuationVector s = change_basis(v, Basis::Sigma);
            PiScalar acc;
            for (int i = 0; i <= v.N; ++i) {
                if (!s[i].is_zero() && !(*es)[static_cast<std::size_t>(i)].is_zero()) {
                    acc += s[i] * (*es)[static_cast<std::size_t>(i)];
                }
            }
            return {float_of(acc), acc};
        }
    }
    const auto sig = sigma_values(set);
    double acc = 0.0;
    for (int i = 0; i <= v.N; ++i) {
        if (!v[i].is_zero()) {
            acc += float_of(v[i]) * basis_value(v.basis, i, sig);
        }
    }
    return {acc, std::nullopt};
}

/// tau_k(A) = (4N)^{k/2} sigma_{N-k}(A).
inline Evaluation tau_evaluate(int k, const ModelSet& set)
{
    validate(set);
    if (is_unit_side(set)) {
        throw std::invalid_argument("tau_evaluate: unit-sphere set " + describe(set));
    }
    const int N = ambient_dimension(set);
    if (k < 0 || k > N) {
        throw std::domain_error("tau_evaluate: need 0 <= k <= N");
    }
    if (auto es = exact_sigma_values(set)) {
        const PiScalar x = detail::scale_power(N, k) * (*es)[static_cast<std::size_t>(N - k)];
        return {float_of(x), x};
    }
    return {basis_value(Basis::Tau, k, sigma_values(set)), std::nullopt};
}

/// |sigma_k|(A): sigma_k with absolute principal curvatures, for the convex
/// (or C^{1,1}) model sets. For tubes the core-parallel curvatures are
/// negative, so this differs from sigma_k once k >= 2.
inline double abs_sigma(int k, const ModelSet& set)
{
    validate(set);
    if (const auto* b = std::get_if<GeodesicBall>(&set)) {
        if (b->r > 0.5 * num::pi * std::sqrt(double(b->N)) * (1.0 + 1e-15)) {
            throw std::domain_error("abs_sigma: geodesic ball larger than a hemisphere is not convex");
        }
    } else if (!std::holds_alternative<SubsphereTube>(set) && !std::holds_alternative<GreatSubsphere>(set) &&
               !std::holds_alternative<AmbientSphere>(set)) {
        throw std::invalid_argument("abs_sigma: unsupported set " + describe(set));
    }
    const int N = ambient_dimension(set);
    if (k < 0 || k > N) {
        throw std::domain_error("abs_sigma: need 0 <= k <= N");
    }
    return sigma_values(set, true)[static_cast<std::size_t>(k)];
}

} // namespace gkf::lk
