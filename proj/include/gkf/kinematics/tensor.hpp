#pragma once

#include <stdexcept>

#include "gkf/exact_matrix.hpp"
#include "gkf/lk_algebra/basis.hpp"

namespace gkf::kin {

using lk::Basis;

/// Default caps on N for dense tensors.
struct TensorLimits {
    int max_exact_N = 64;
    int max_float_N = 4096;
};

inline TensorLimits& tensor_limits()
{
    static TensorLimits limits;
    return limits;
}

inline void check_exact_N(int N)
{
    if (N < 0) {
        throw std::domain_error("N must be nonnegative");
    }
    if (N > tensor_limits().max_exact_N) {
        throw std::domain_error("N exceeds the exact-tensor cap (" + std::to_string(tensor_limits().max_exact_N) + ")");
    }
}

/// Element of V^N (x) V^N: entry (i, j) is the coefficient of left_i (x) right_j.
struct KinematicTensor {
    int N = 0;
    Basis left = Basis::Sigma;
    Basis right = Basis::Sigma;
    ExactMatrix matrix;

    KinematicTensor() = default;
    KinematicTensor(int n, Basis l, Basis r)
        : N(n), left(l), right(r), matrix(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1)
    {
    }

    PiScalar& operator()(int i, int j) { return matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
    const PiScalar& operator()(int i, int j) const
    {
        return matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }

    KinematicTensor& operator+=(const KinematicTensor& o)
    {
        if (o.N != N || o.left != left || o.right != right) {
            throw std::invalid_argument("KinematicTensor: incompatible sum");
        }
        matrix += o.matrix;
        return *this;
    }

    KinematicTensor& operator*=(const PiScalar& s)
    {
        matrix *= s;
        return *this;
    }

    bool is_symmetric() const
    {
        if (left != right) {
            return false;
        }
        for (int i = 0; i <= N; ++i) {
            for (int j = i + 1; j <= N; ++j) {
                if (!((*this)(i, j) == (*this)(j, i))) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const KinematicTensor& a, const KinematicTensor& b)
    {
        return a.N == b.N && a.left == b.left && a.right == b.right && a.matrix == b.matrix;
    }
};

} // namespace gkf::kin
