#pragma once

#include <stdexcept>
#include <vector>

#include "gkf/scalar_ring.hpp"

namespace gkf::lk {

/// Truncated power series in u modulo u^{N+1}.
struct SeriesU {
    int N = 0;
    std::vector<PiScalar> coeffs; // size N + 1

    SeriesU() = default;
    explicit SeriesU(int n) : N(n), coeffs(static_cast<std::size_t>(n) + 1)
    {
        if (n < 0) {
            throw std::domain_error("SeriesU: N must be nonnegative");
        }
    }

    static SeriesU monomial(int n, int degree, PiScalar c = PiScalar(1))
    {
        SeriesU s(n);
        if (degree >= 0 && degree <= n) {
            s.coeffs[static_cast<std::size_t>(degree)] = std::move(c);
        }
        return s;
    }

    /// (1 + a u^2)^exponent, truncated.
    static SeriesU binomial(int n, HalfInteger exponent, const Rational& a = Rational(1))
    {
        SeriesU s(n);
        Rational ap(1);
        for (int j = 0; 2 * j <= n; ++j) {
            s.coeffs[static_cast<std::size_t>(2 * j)] = PiScalar(generalized_binomial(exponent, j) * ap);
            ap *= a;
        }
        return s;
    }

    const PiScalar& operator[](int k) const { return coeffs[static_cast<std::size_t>(k)]; }
    PiScalar& operator[](int k) { return coeffs[static_cast<std::size_t>(k)]; }

    int degree() const
    {
        for (int k = N; k >= 0; --k) {
            if (!coeffs[static_cast<std::size_t>(k)].is_zero()) {
                return k;
            }
        }
        return -1;
    }

    /// Multiply by u^k and truncate.
    SeriesU shifted(int k) const
    {
        SeriesU r(N);
        for (int i = 0; i + k <= N; ++i) {
            r[i + k] = (*this)[i];
        }
        return r;
    }

    SeriesU& operator+=(const SeriesU& o)
    {
        check_same(o);
        for (int k = 0; k <= N; ++k) {
            coeffs[static_cast<std::size_t>(k)] += o[k];
        }
        return *this;
    }

    SeriesU& operator*=(const PiScalar& c)
    {
        for (auto& x : coeffs) {
            x *= c;
        }
        return *this;
    }

    friend SeriesU operator+(SeriesU a, const SeriesU& b) { return a += b; }

    friend SeriesU operator*(const SeriesU& a, const SeriesU& b)
    {
        a.check_same(b);
        SeriesU r(a.N);
        for (int i = 0; i <= a.N; ++i) {
            if (a[i].is_zero()) {
                continue;
            }
            for (int j = 0; i + j <= a.N; ++j) {
                if (!b[j].is_zero()) {
                    r[i + j] += a[i] * b[j];
                }
            }
        }
        return r;
    }

    friend bool operator==(const SeriesU&, const SeriesU&) = default;

private:
    void check_same(const SeriesU& o) const
    {
        if (o.N != N) {
            throw std::invalid_argument("SeriesU: truncation orders differ");
        }
    }
};

inline SeriesU pow(const SeriesU& s, int e)
{
    SeriesU r = SeriesU::monomial(s.N, 0);
    for (int i = 0; i < e; ++i) {
        r = r * s;
    }
    return r;
}

} // namespace gkf::lk
