#pragma once

// Random linear maps F : R^{n+1} -> R^d.
//
// Pi_infinity: i.i.d. standard normal entries (the canonical process).
// Pi_N:        sqrt(N) times the top d x (n+1) block of a Haar-random element
//              of O(N+1); only the first n+1 columns matter, and these form a
//              uniform orthonormal frame, obtained from a Gaussian matrix by a
//              QR decomposition normalized to a positive diagonal.
//
// Both laws consume the stream row by row, so a Pi_N draw and a Pi_infinity
// draw from the same stream share their top d rows of Gaussian input.

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "gkf/simulation/rng.hpp"

namespace gkf::sim {

enum class Law { PiInfinity, PiN };

struct LawChoice {
    Law law = Law::PiInfinity;
    int N = 0; // used only for Pi_N
};

struct LinearMapSample {
    Eigen::MatrixXd entries; // d x (n+1)
    Law origin = Law::PiInfinity;
    int N = 0;
};

inline Eigen::MatrixXd gaussian_matrix(int rows, int cols, RngStream& rng)
{
    Eigen::MatrixXd g(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            g(i, j) = rng.normal();
        }
    }
    return g;
}

inline LinearMapSample sample_pi_infinity(int n, int d, RngStream& rng)
{
    if (n < 0 || d < 1) {
        throw std::domain_error("sample_pi_infinity: need n >= 0, d >= 1");
    }
    return {gaussian_matrix(d, n + 1, rng), Law::PiInfinity, 0};
}

/// Uniform orthonormal (n+1)-frame in R^{N+1}, as an (N+1) x (n+1) matrix.
inline Eigen::MatrixXd sample_stiefel_frame(int n, int N, RngStream& rng)
{
    if (n < 0 || N < n) {
        throw std::domain_error("sample_stiefel_frame: need 0 <= n <= N");
    }
    const Eigen::MatrixXd g = gaussian_matrix(N + 1, n + 1, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(N + 1, n + 1);
    const Eigen::MatrixXd& r = qr.matrixQR();
    for (int j = 0; j <= n; ++j) {
        if (r(j, j) < 0.0) {
            q.col(j) = -q.col(j);
        }
    }
    return q;
}

inline LinearMapSample sample_pi_N(int n, int d, int N, RngStream& rng)
{
    if (n < 0 || d < 1 || N < n || N + 1 < d) {
        throw std::domain_error("sample_pi_N: need N >= n and N + 1 >= d");
    }
    // Q = G R^{-1} with R positive on the diagonal; only the top d rows of Q
    // are needed, so they are formed directly.
    const Eigen::MatrixXd g = gaussian_matrix(N + 1, n + 1, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd r = qr.matrixQR().topRows(n + 1).triangularView<Eigen::Upper>();
    for (int j = 0; j <= n; ++j) {
        if (r(j, j) < 0.0) {
            r.row(j) = -r.row(j);
        }
    }
    Eigen::MatrixXd top = g.topRows(d);
    // top * R^{-1}: solve X R = top, i.e. R^T X^T = top^T
    Eigen::MatrixXd xt = r.transpose().triangularView<Eigen::Lower>().solve(top.transpose());
    return {std::sqrt(double(N)) * xt.transpose(), Law::PiN, N};
}

inline LinearMapSample sample_law(const LawChoice& law, int n, int d, RngStream& rng)
{
    return law.law == Law::PiInfinity ? sample_pi_infinity(n, d, rng) : sample_pi_N(n, d, law.N, rng);
}

} // namespace gkf::sim
