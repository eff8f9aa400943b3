#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gkf/scalar_ring.hpp"

namespace gkf {

/// Dense row-major matrix with exact entries.
class ExactMatrix
{
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ExactMatrix identity(std::size_t n)
    {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = PiScalar(1);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    PiScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const PiScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<PiScalar> apply(const std::vector<PiScalar>& v) const
    {
        if (v.size() != cols_) {
            throw std::invalid_argument("ExactMatrix::apply: size mismatch");
        }
        std::vector<PiScalar> out(rows_);
        for (std::size_t j = 0; j < cols_; ++j) {
            if (v[j].is_zero()) {
                continue;
            }
            for (std::size_t i = 0; i < rows_; ++i) {
                const PiScalar& a = (*this)(i, j);
                if (!a.is_zero()) {
                    out[i] += a * v[j];
                }
            }
        }
        return out;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b)
    {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("ExactMatrix product: size mismatch");
        }
        ExactMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const PiScalar& x = a(i, k);
                if (x.is_zero()) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const PiScalar& y = b(k, j);
                    if (!y.is_zero()) {
                        c(i, j) += x * y;
                    }
                }
            }
        }
        return c;
    }

    ExactMatrix transposed() const
    {
        ExactMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    ExactMatrix& operator+=(const ExactMatrix& o)
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument("ExactMatrix sum: size mismatch");
        }
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (!o.data_[i].is_zero()) {
                data_[i] += o.data_[i];
            }
        }
        return *this;
    }

    ExactMatrix& operator*=(const PiScalar& s)
    {
        for (auto& x : data_) {
            if (!x.is_zero()) {
                x *= s;
            }
        }
        return *this;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<PiScalar> data_;
};

} // namespace gkf
