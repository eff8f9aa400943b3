#pragma once

// p_N(chi) in U (x) Sigma form and the nu_k basis read off from it.
//
//   2 p_N(chi) = sum_i (u / sqrt(1 + u^2))^i (x) sigma_i
//
// The coefficient of u^k on the left is nu_k, expressed in the sigma basis.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "gkf/kinematics/tensor.hpp"
#include "gkf/lk_algebra/series.hpp"

namespace gkf::kin {

/// p_N(chi) as a U (x) Sigma tensor. Each left factor w^i, w = u (1+u^2)^{-1/2},
/// is expanded by truncated series multiplication.
inline KinematicTensor p_chi(int N)
{
    if (N < 1) {
        throw std::domain_error("p_chi: N must be at least 1");
    }
    check_exact_N(N);
    KinematicTensor t(N, Basis::U, Basis::Sigma);
    const lk::SeriesU w = lk::SeriesU::binomial(N, HalfInteger::half(-1)).shifted(1);
    lk::SeriesU wi = lk::SeriesU::monomial(N, 0);
    const Rational half = rat(1, 2);
    for (int i = 0; i <= N; ++i) {
        for (int k = 0; k <= N; ++k) {
            if (!wi[k].is_zero()) {
                t(k, i) = wi[k] * half;
            }
        }
        wi = wi * w;
    }
    return t;
}

/// Rows nu_k, k = 0..N, as sigma-basis coefficient vectors.
struct NuTable {
    int N = 0;
    std::vector<std::vector<PiScalar>> rows;

    const std::vector<PiScalar>& operator[](int k) const { return rows[static_cast<std::size_t>(k)]; }
};

inline NuTable extract_nu_table(const KinematicTensor& pchi)
{
    if (pchi.left != Basis::U || pchi.right != Basis::Sigma) {
        throw std::invalid_argument("extract_nu_table: expected a U (x) Sigma tensor");
    }
    NuTable table;
    table.N = pchi.N;
    table.rows.assign(static_cast<std::size_t>(pchi.N) + 1, std::vector<PiScalar>(static_cast<std::size_t>(pchi.N) + 1));
    for (int k = 0; k <= pchi.N; ++k) {
        for (int i = 0; i <= pchi.N; ++i) {
            table.rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = pchi(k, i);
        }
    }
    return table;
}

namespace detail {

inline std::shared_ptr<const NuTable> cached_nu_table(int N)
{
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const NuTable>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(N); it != cache.end()) {
            return it->second;
        }
    }
    auto table = std::make_shared<const NuTable>(extract_nu_table(p_chi(N)));
    std::lock_guard lock(mutex);
    return cache.emplace(N, std::move(table)).first->second;
}

} // namespace detail

inline NuTable nu_table(int N) { return *detail::cached_nu_table(N); }

/// Sigma-coefficient of nu_k at sigma_i, as a closed form:
/// 1/2 binom(-i/2, (k-i)/2) when k - i is even and nonnegative, else 0.
/// Used by the float evaluation path, which never builds the dense table.
inline Rational nu_sigma_coefficient(int k, int i)
{
    if (i > k || (k - i) % 2 != 0) {
        return Rational(0);
    }
    return generalized_binomial(HalfInteger::half(-i), (k - i) / 2) * rat(1, 2);
}

/// The closed forms printed alongside the generating-function computation.
/// They agree with the extraction except for an overall sign on nu_{4l},
/// l >= 1; the extraction is the one used everywhere else.
inline std::vector<PiScalar> nu_printed_form(int N, int kk)
{
    std::vector<Rational> v(static_cast<std::size_t>(N) + 1);
    auto at = [&](int i) -> Rational& { return v.at(static_cast<std::size_t>(i)); };
    if (kk == 0) {
        at(0) = rat(1, 2);
    } else if (kk % 2 == 0) {
        const int k = kk / 2;
        for (int j = 0; j < k; ++j) {
            at(2 * j + 2) += generalized_binomial(HalfInteger::whole(k - 1), j) * (j % 2 == 0 ? 1 : -1) * rat(1, 2);
        }
    } else {
        const int k = kk / 2;
        for (int j = 0; j <= k; ++j) {
            for (int i = 0; i <= k - j; ++i) {
                const int sign = (k - j - i) % 2 == 0 ? 1 : -1;
                at(2 * i + 1) += generalized_binomial(HalfInteger::half(1), j) *
                                 generalized_binomial(HalfInteger::whole(k - j), i) * sign * rat(1, 2);
            }
        }
    }
    std::vector<PiScalar> out;
    out.reserve(v.size());
    for (auto& q : v) {
        out.emplace_back(q);
    }
    return out;
}

} // namespace gkf::kin
