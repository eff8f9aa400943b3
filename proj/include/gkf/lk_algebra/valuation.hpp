#pragma once

// Coordinates of invariant valuations on Sigma^N and exact conversions
// between the seven bases. Every basis is related to U by a closed-form
// truncated series, so conversions go through U:
//
//   t^i      = (4N)^{i/2} u^i
//   mu_i     = pi^i / (i! omega_i) t^i
//   phi^i    = (4N)^{i/2} u^i (1 + u^2)^{-i/2}
//   tau_i    = (4N)^{i/2} u^i (1 + u^2)^{-i/2 - 1}
//   sigma_i  = tau_{N-i} / (4N)^{(N-i)/2}
//   u^k      = sum_j binom(j + k/2, j) sigma_{N-k-2j}
//   nu_k     = coefficient of u^k in p_N(chi), see kinematics/nu_table.hpp

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "gkf/exact_matrix.hpp"
#include "gkf/kinematics/nu_table.hpp"
#include "gkf/lk_algebra/basis.hpp"
#include "gkf/lk_algebra/series.hpp"

namespace gkf::lk {

struct ValuationVector {
    int N = 0;
    Basis basis = Basis::U;
    std::vector<PiScalar> coeffs; // size N + 1

    ValuationVector() = default;
    ValuationVector(int n, Basis b) : N(n), basis(b), coeffs(static_cast<std::size_t>(n) + 1)
    {
        if (n < 0) {
            throw std::domain_error("ValuationVector: N must be nonnegative");
        }
    }
    ValuationVector(int n, Basis b, std::vector<PiScalar> c) : N(n), basis(b), coeffs(std::move(c))
    {
        if (n < 0 || coeffs.size() != static_cast<std::size_t>(n) + 1) {
            throw std::invalid_argument("ValuationVector: expected N + 1 coefficients");
        }
    }

    /// The i-th element of basis b.
    static ValuationVector unit(int n, Basis b, int i)
    {
        ValuationVector v(n, b);
        v[i] = PiScalar(1);
        return v;
    }

    /// The Euler characteristic, chi = t^0 = u^0.
    static ValuationVector chi(int n) { return unit(n, Basis::U, 0); }

    PiScalar& operator[](int i) { return coeffs.at(static_cast<std::size_t>(i)); }
    const PiScalar& operator[](int i) const { return coeffs.at(static_cast<std::size_t>(i)); }

    friend bool operator==(const ValuationVector&, const ValuationVector&) = default;
};

namespace detail {

inline PiScalar scale_power(int N, int twice_exponent)
{
    return PiScalar::half_power(Rational(4 * N), twice_exponent);
}

/// pi^i / (i! omega_i)
inline PiScalar mu_factor(int i)
{
    return PiScalar::pi_power(2 * i) * omega(i).inverse() * Rational(1 / factorial(i));
}

inline ExactMatrix build_to_u(int N, Basis b);
inline ExactMatrix build_from_u(int N, Basis b);

inline ExactMatrix sigma_to_nu(int N)
{
    const auto table = kin::detail::cached_nu_table(N);
    const std::size_t n = static_cast<std::size_t>(N) + 1;
    ExactMatrix m(n, n);
    // rows nu_k are lower triangular in sigma with diagonal 1/2
    for (int col = 0; col <= N; ++col) {
        std::vector<PiScalar> s(n);
        s[static_cast<std::size_t>(col)] = PiScalar(1);
        std::vector<PiScalar> c(n);
        for (int k = N; k >= 0; --k) {
            PiScalar r = s[static_cast<std::size_t>(k)];
            for (int kk = k + 1; kk <= N; ++kk) {
                const PiScalar& a = (*table)[kk][static_cast<std::size_t>(k)];
                if (!a.is_zero() && !c[static_cast<std::size_t>(kk)].is_zero()) {
                    r -= a * c[static_cast<std::size_t>(kk)];
                }
            }
            c[static_cast<std::size_t>(k)] = r * (*table)[k][static_cast<std::size_t>(k)].inverse();
        }
        for (std::size_t k = 0; k < n; ++k) {
            m(k, static_cast<std::size_t>(col)) = c[k];
        }
    }
    return m;
}

inline ExactMatrix build_to_u(int N, Basis b)
{
    const std::size_t n = static_cast<std::size_t>(N) + 1;
    ExactMatrix m(n, n);
    auto set = [&](int row, int col, PiScalar v) {
        if (row <= N) {
            m(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) = std::move(v);
        }
    };
    switch (b) {
    case Basis::U:
        return ExactMatrix::identity(n);
    case Basis::T:
        for (int i = 0; i <= N; ++i) {
            set(i, i, scale_power(N, i));
        }
        return m;
    case Basis::Mu:
        for (int i = 0; i <= N; ++i) {
            set(i, i, mu_factor(i) * scale_power(N, i));
        }
        return m;
    case Basis::Phi:
        for (int i = 0; i <= N; ++i) {
            const PiScalar s = scale_power(N, i);
            for (int j = 0; i + 2 * j <= N; ++j) {
                set(i + 2 * j, i, s * generalized_binomial(HalfInteger::half(-i), j));
            }
        }
        return m;
    case Basis::Tau:
        for (int i = 0; i <= N; ++i) {
            const PiScalar s = scale_power(N, i);
            for (int j = 0; i + 2 * j <= N; ++j) {
                set(i + 2 * j, i, s * generalized_binomial(HalfInteger::half(-i - 2), j));
            }
        }
        return m;
    case Basis::Sigma:
        for (int i = 0; i <= N; ++i) {
            const int deg = N - i;
            for (int j = 0; deg + 2 * j <= N; ++j) {
                set(deg + 2 * j, i, PiScalar(generalized_binomial(HalfInteger::half(-deg - 2), j)));
            }
        }
        return m;
    case Basis::Nu: {
        const auto table = kin::detail::cached_nu_table(N);
        ExactMatrix nu_in_sigma(n, n);
        for (int k = 0; k <= N; ++k) {
            for (int i = 0; i <= N; ++i) {
                nu_in_sigma(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = (*table)[k][static_cast<std::size_t>(i)];
            }
        }
        return build_to_u(N, Basis::Sigma) * nu_in_sigma;
    }
    }
    throw std::invalid_argument("unknown basis");
}

inline ExactMatrix build_from_u(int N, Basis b)
{
    const std::size_t n = static_cast<std::size_t>(N) + 1;
    ExactMatrix m(n, n);
    auto set = [&](int row, int col, PiScalar v) {
        if (row >= 0 && row <= N) {
            m(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) = std::move(v);
        }
    };
    switch (b) {
    case Basis::U:
        return ExactMatrix::identity(n);
    case Basis::T:
        for (int i = 0; i <= N; ++i) {
            set(i, i, scale_power(N, -i));
        }
        return m;
    case Basis::Mu:
        for (int i = 0; i <= N; ++i) {
            set(i, i, (mu_factor(i) * scale_power(N, i)).inverse());
        }
        return m;
    case Basis::Phi:
        // u^j = (4N)^{-j/2} sum_l (-1)^l binom(-j/2, l) (4N)^{-l} phi^{j+2l}
        for (int j = 0; j <= N; ++j) {
            for (int l = 0; j + 2 * l <= N; ++l) {
                Rational c = generalized_binomial(HalfInteger::half(-j), l);
                if (l % 2 != 0) {
                    c = -c;
                }
                set(j + 2 * l, j, scale_power(N, -j - 2 * l) * c);
            }
        }
        return m;
    case Basis::Sigma:
        for (int k = 0; k <= N; ++k) {
            for (int l = 0; k + 2 * l <= N; ++l) {
                set(N - k - 2 * l, k, PiScalar(generalized_binomial(HalfInteger::half(2 * l + k), l)));
            }
        }
        return m;
    case Basis::Tau:
        for (int k = 0; k <= N; ++k) {
            for (int l = 0; k + 2 * l <= N; ++l) {
                set(k + 2 * l, k, scale_power(N, -k - 2 * l) * generalized_binomial(HalfInteger::half(2 * l + k), l));
            }
        }
        return m;
    case Basis::Nu:
        return sigma_to_nu(N) * build_from_u(N, Basis::Sigma);
    }
    throw std::invalid_argument("unknown basis");
}

enum class Direction { ToU, FromU };

inline std::shared_ptr<const ExactMatrix> conversion_matrix(int N, Basis b, Direction dir)
{
    kin::check_exact_N(N);
    using Key = std::tuple<int, Basis, Direction>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const ExactMatrix>> cache;
    const Key key{N, b, dir};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    auto m = std::make_shared<const ExactMatrix>(dir == Direction::ToU ? build_to_u(N, b) : build_from_u(N, b));
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(m)).first->second;
}

} // namespace detail

/// Matrix sending `from`-coordinates to `to`-coordinates.
inline ExactMatrix change_of_basis_matrix(int N, Basis from, Basis to)
{
    if (from == to) {
        return ExactMatrix::identity(static_cast<std::size_t>(N) + 1);
    }
    return *detail::conversion_matrix(N, to, detail::Direction::FromU) *
           *detail::conversion_matrix(N, from, detail::Direction::ToU);
}

inline ValuationVector change_basis(const ValuationVector& v, Basis target)
{
    if (v.basis == target) {
        return v;
    }
    std::vector<PiScalar> u = v.basis == Basis::U
                                  ? v.coeffs
                                  : detail::conversion_matrix(v.N, v.basis, detail::Direction::ToU)->apply(v.coeffs);
    if (target == Basis::U) {
        return {v.N, target, std::move(u)};
    }
    return {v.N, target, detail::conversion_matrix(v.N, target, detail::Direction::FromU)->apply(u)};
}

/// Truncated-series substitutions between generator families. The input
/// coefficients are read in the first-named basis and the result is expressed
/// in the second: PhiOfU rewrites a polynomial in phi as a series in u, and so on.
enum class ComposeRule { PhiOfU, UOfPhi, SigmaFromU, UFromSigma, MuFromT, TFromMu };

inline ValuationVector series_compose(const SeriesU& f, ComposeRule rule)
{
    if (f.degree() > f.N) {
        throw std::domain_error("series_compose: degree exceeds N");
    }
    auto run = [&](Basis from, Basis to) { return change_basis(ValuationVector(f.N, from, f.coeffs), to); };
    switch (rule) {
    case ComposeRule::PhiOfU: return run(Basis::Phi, Basis::U);
    case ComposeRule::UOfPhi: return run(Basis::U, Basis::Phi);
    case ComposeRule::SigmaFromU: return run(Basis::Sigma, Basis::U);
    case ComposeRule::UFromSigma: return run(Basis::U, Basis::Sigma);
    case ComposeRule::MuFromT: return run(Basis::Mu, Basis::T);
    case ComposeRule::TFromMu: return run(Basis::T, Basis::Mu);
    }
    throw std::invalid_argument("series_compose: unknown rule");
}

/// Product in the Lipschitz-Killing algebra, truncated at degree N.
/// Both factors must be given in T or U; the result is in T when both are,
/// otherwise in U.
inline ValuationVector lk_multiply(const ValuationVector& a, const ValuationVector& b)
{
    auto ok = [](Basis x) { return x == Basis::T || x == Basis::U; };
    if (!ok(a.basis) || !ok(b.basis)) {
        throw std::invalid_argument("lk_multiply: factors must be in the T or U basis");
    }
    if (a.N != b.N) {
        throw std::invalid_argument("lk_multiply: dimension mismatch");
    }
    const Basis out_basis = (a.basis == Basis::T && b.basis == Basis::T) ? Basis::T : Basis::U;
    const ValuationVector x = change_basis(a, out_basis);
    const ValuationVector y = change_basis(b, out_basis);
    ValuationVector r(a.N, out_basis);
    for (int i = 0; i <= a.N; ++i) {
        if (x[i].is_zero()) {
            continue;
        }
        for (int j = 0; i + j <= a.N; ++j) {
            if (!y[j].is_zero()) {
                r[i + j] += x[i] * y[j];
            }
        }
    }
    return r;
}

} // namespace gkf::lk
