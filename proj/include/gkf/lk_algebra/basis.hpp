#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gkf::lk {

/// Coordinate systems on the (N+1)-dimensional space of O(N+1)-invariant
/// valuations on the sphere of radius sqrt(N).
///
///   Phi   powers of the Crofton generator phi
///   T     powers of the Lipschitz-Killing generator t
///   U     powers of u = t / sqrt(4N)
///   Mu    intrinsic volumes, e^{pi t} = sum_i omega_i mu_i
///   Tau   curvature integrals, 1/2 tau_i(great j-sphere) = (4N)^{i/2} delta_ij
///   Sigma sigma_i = tau_{N-i} / (4N)^{(N-i)/2}
///   Nu    the dual family in p_N(chi) = sum_k u^k (x) nu_k
enum class Basis { Phi, T, U, Mu, Tau, Sigma, Nu };

inline constexpr std::array<Basis, 7> all_bases{Basis::Phi, Basis::T,     Basis::U,  Basis::Mu,
                                                 Basis::Tau, Basis::Sigma, Basis::Nu};

inline std::string_view to_string(Basis b)
{
    switch (b) {
    case Basis::Phi: return "Phi";
    case Basis::T: return "T";
    case Basis::U: return "U";
    case Basis::Mu: return "Mu";
    case Basis::Tau: return "Tau";
    case Basis::Sigma: return "Sigma";
    case Basis::Nu: return "Nu";
    }
    return "?";
}

inline Basis basis_from_string(std::string_view s)
{
    for (Basis b : all_bases) {
        if (to_string(b) == s) {
            return b;
        }
    }
    // lower-case aliases
    if (s == "phi") return Basis::Phi;
    if (s == "t") return Basis::T;
    if (s == "u") return Basis::U;
    if (s == "mu") return Basis::Mu;
    if (s == "tau") return Basis::Tau;
    if (s == "sigma") return Basis::Sigma;
    if (s == "nu") return Basis::Nu;
    throw std::invalid_argument("unknown basis: " + std::string(s));
}

} // namespace gkf::lk
