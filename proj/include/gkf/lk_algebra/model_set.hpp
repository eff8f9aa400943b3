#pragma once

// Sphere-side model sets and their curvature data.
//
// Sets of the form "AmbientSphere .. SubsphereTube" live in Sigma^N, the sphere
// of radius sqrt(N). The Unit* sets live on the unit sphere S^n and are only
// ever measured by their own intrinsic Lipschitz-Killing numbers.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gkf/numerics.hpp"
#include "gkf/scalar_ring.hpp"

namespace gkf::lk {

struct AmbientSphere {
    int N = 1;
};
struct GeodesicBall {
    int N = 1;
    double r = 0.0; // geodesic radius in Sigma^N
};
struct GreatSubsphere {
    int N = 1;
    int j = 0;
};
/// Points of Sigma^N within geodesic distance s of a great (N - d)-sphere.
struct SubsphereTube {
    int N = 1;
    int d = 1;
    double s = 0.0;
};
struct UnitSphere {
    int n = 1;
};
struct UnitGreatSubsphere {
    int n = 1;
    int m = 0;
};
struct UnitCap {
    int n = 1;
    double theta = 0.0;
};

using ModelSet = std::variant<AmbientSphere, GeodesicBall, GreatSubsphere, SubsphereTube, UnitSphere,
                              UnitGreatSubsphere, UnitCap>;

inline bool is_unit_side(const ModelSet& s)
{
    return std::holds_alternative<UnitSphere>(s) || std::holds_alternative<UnitGreatSubsphere>(s) ||
           std::holds_alternative<UnitCap>(s);
}

/// N for Sigma^N-side sets, n for unit-side sets.
inline int ambient_dimension(const ModelSet& s)
{
    return std::visit(
        [](const auto& x) -> int {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UnitSphere> || std::is_same_v<T, UnitGreatSubsphere> ||
                          std::is_same_v<T, UnitCap>) {
                return x.n;
            } else {
                return x.N;
            }
        },
        s);
}

inline std::string describe(const ModelSet& s)
{
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AmbientSphere>) {
                return "AmbientSphere{N=" + std::to_string(x.N) + "}";
            } else if constexpr (std::is_same_v<T, GeodesicBall>) {
                return "GeodesicBall{N=" + std::to_string(x.N) + ", r=" + num(x.r) + "}";
            } else if constexpr (std::is_same_v<T, GreatSubsphere>) {
                return "GreatSubsphere{N=" + std::to_string(x.N) + ", j=" + std::to_string(x.j) + "}";
            } else if constexpr (std::is_same_v<T, SubsphereTube>) {
                return "SubsphereTube{N=" + std::to_string(x.N) + ", d=" + std::to_string(x.d) + ", s=" + num(x.s) + "}";
            } else if constexpr (std::is_same_v<T, UnitSphere>) {
                return "UnitSphere{n=" + std::to_string(x.n) + "}";
            } else if constexpr (std::is_same_v<T, UnitGreatSubsphere>) {
                return "UnitGreatSubsphere{n=" + std::to_string(x.n) + ", m=" + std::to_string(x.m) + "}";
            } else {
                return "UnitCap{n=" + std::to_string(x.n) + ", theta=" + num(x.theta) + "}";
            }
        },
        s);
}

/// Throws std::domain_error when parameters are out of range. Zero radii are
/// accepted and treated as the degenerate limit (a point, or the core sphere).
inline void validate(const ModelSet& set)
{
    auto fail = [&](const std::string& why) { throw std::domain_error(describe(set) + ": " + why); };
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AmbientSphere>) {
                if (x.N < 1) fail("N must be at least 1");
            } else if constexpr (std::is_same_v<T, GeodesicBall>) {
                if (x.N < 1) fail("N must be at least 1");
                if (!(x.r >= 0.0) || !(x.r <= num::pi * std::sqrt(double(x.N)))) fail("radius must lie in [0, pi sqrt(N)]");
            } else if constexpr (std::is_same_v<T, GreatSubsphere>) {
                if (x.N < 1) fail("N must be at least 1");
                if (x.j < 0 || x.j > x.N) fail("need 0 <= j <= N");
            } else if constexpr (std::is_same_v<T, SubsphereTube>) {
                if (x.N < 1) fail("N must be at least 1");
                if (x.d < 1 || x.d > x.N) fail("need 1 <= d <= N");
                if (!(x.s >= 0.0) || !(x.s < 0.5 * num::pi * std::sqrt(double(x.N)))) fail("need 0 <= s < (pi/2) sqrt(N)");
            } else if constexpr (std::is_same_v<T, UnitSphere>) {
                if (x.n < 0) fail("n must be nonnegative");
            } else if constexpr (std::is_same_v<T, UnitGreatSubsphere>) {
                if (x.m < 0 || x.m > x.n) fail("need 0 <= m <= n");
            } else {
                if (x.n < 1) fail("n must be at least 1");
                if (!(x.theta >= 0.0) || !(x.theta <= 0.5 * num::pi)) fail("need 0 <= theta <= pi/2");
            }
        },
        set);
}

/// Boundary (N-1)-volume and principal curvatures (with respect to the
/// outward normal's opposite, so convex caps have positive curvature).
struct PrincipalCurvatureProfile {
    double area = 0.0;
    double log_area = 0.0;
    std::vector<std::pair<double, int>> curvatures; // (value, multiplicity)
};

inline PrincipalCurvatureProfile curvature_profile(const ModelSet& set)
{
    validate(set);
    const int N = ambient_dimension(set);
    const double R = std::sqrt(double(N));
    PrincipalCurvatureProfile p;
    if (const auto* b = std::get_if<GeodesicBall>(&set)) {
        if (b->r <= 0.0) {
            throw std::domain_error("curvature_profile: degenerate ball has no boundary");
        }
        const double th = b->r / R;
        p.log_area = num::log_alpha(N - 1) + (N - 1) * (std::log(R) + std::log(std::sin(th)));
        p.curvatures.emplace_back(std::cos(th) / (std::sin(th) * R), N - 1);
    } else if (const auto* t = std::get_if<SubsphereTube>(&set)) {
        if (t->s <= 0.0) {
            throw std::domain_error("curvature_profile: degenerate tube has no boundary");
        }
        const double th = t->s / R;
        // boundary = S^{d-1}(R sin th) x S^{N-d}(R cos th)
        p.log_area = num::log_alpha(t->d - 1) + num::log_alpha(N - t->d) + (N - 1) * std::log(R) +
                     (t->d - 1) * std::log(std::sin(th)) + (N - t->d) * std::log(std::cos(th));
        if (t->d > 1) {
            p.curvatures.emplace_back(std::cos(th) / (std::sin(th) * R), t->d - 1);
        }
        if (N > t->d) {
            p.curvatures.emplace_back(-std::sin(th) / (std::cos(th) * R), N - t->d);
        }
    } else {
        throw std::invalid_argument("curvature_profile: unsupported set " + describe(set));
    }
    p.area = std::exp(p.log_area);
    return p;
}

namespace detail {

inline double lpow(double x, int e) { return e == 0 ? 0.0 : e * std::log(std::fabs(x)); }
inline int spow(double x, int e) { return (x < 0.0 && e % 2 != 0) ? -1 : 1; }

/// sigma_i (i >= 1) of a geodesic ball of angular radius th in S^N:
/// 2 alpha_{N-1} binom(N-1, i-1) / (alpha_{N-i} alpha_{i-1}) sin^{N-i} cos^{i-1}.
inline double ball_sigma(int N, int i, double th)
{
    const double s = std::sin(th);
    const double c = std::cos(th);
    if ((s == 0.0 && N - i > 0) || (c == 0.0 && i - 1 > 0)) {
        return 0.0;
    }
    const double l = std::log(2.0) + num::log_alpha(N - 1) + num::log_binomial(N - 1, i - 1) -
                     num::log_alpha(N - i) - num::log_alpha(i - 1) + lpow(s, N - i) + lpow(c, i - 1);
    return spow(c, i - 1) * std::exp(l);
}

/// sigma_i (i >= 1) of the tube of angular radius th about a great (N-d)-sphere,
/// using curvatures cot th (mult d-1) and -tan th (mult N-d). With
/// absolute = true the curvature signs are dropped.
inline double tube_sigma(int N, int d, int i, double th, bool absolute)
{
    const double s = std::sin(th);
    const double c = std::cos(th);
    const double base = std::log(2.0) + num::log_alpha(d - 1) + num::log_alpha(N - d) - num::log_alpha(N - i) -
                        num::log_alpha(i - 1);
    num::SignedLogSum acc;
    for (int a = 0; a <= d - 1 && a <= i - 1; ++a) {
        const int b = i - 1 - a;
        if (b > N - d) {
            continue;
        }
        const int ps = d - 1 - a + b;
        const int pc = N - d + a - b;
        if ((s == 0.0 && ps > 0) || (c == 0.0 && pc > 0)) {
            continue;
        }
        const int sign = (!absolute && b % 2 != 0) ? -1 : 1;
        acc.add(base + num::log_binomial(d - 1, a) + num::log_binomial(N - d, b) + lpow(s, ps) + lpow(c, pc), sign);
    }
    return acc.value();
}

} // namespace detail

/// Floating values sigma_0 .. sigma_N of a Sigma^N-side set. With
/// absolute = true, curvatures enter through their absolute values.
inline std::vector<double> sigma_values(const ModelSet& set, bool absolute = false)
{
    validate(set);
    if (is_unit_side(set)) {
        throw std::invalid_argument("sigma_values: unit-sphere set " + describe(set));
    }
    const int N = ambient_dimension(set);
    const double R = std::sqrt(double(N));
    std::vector<double> v(static_cast<std::size_t>(N) + 1, 0.0);
    auto at = [&](int i) -> double& { return v[static_cast<std::size_t>(i)]; };
    if (std::holds_alternative<AmbientSphere>(set)) {
        at(0) = 2.0;
    } else if (const auto* g = std::get_if<GreatSubsphere>(&set)) {
        at(N - g->j) = 2.0;
    } else if (const auto* b = std::get_if<GeodesicBall>(&set)) {
        if (b->r == 0.0) {
            at(N) = 1.0;
        } else {
            const double th = b->r / R;
            at(0) = 2.0 * num::cap_fraction(N, th);
            for (int i = 1; i <= N; ++i) {
                const double x = detail::ball_sigma(N, i, th);
                at(i) = absolute ? std::fabs(x) : x;
            }
        }
    } else if (const auto* t = std::get_if<SubsphereTube>(&set)) {
        if (t->s == 0.0) {
            at(t->d) = 2.0;
        } else {
            const double th = t->s / R;
            const double s2 = std::sin(th) * std::sin(th);
            at(0) = 2.0 * boost::math::ibeta(0.5 * t->d, 0.5 * (N - t->d + 1), s2);
            for (int i = 1; i <= N; ++i) {
                at(i) = detail::tube_sigma(N, t->d, i, th, absolute);
            }
        }
    }
    return v;
}

/// Exact sigma values where every entry is closed-form in the scalar ring.
inline std::optional<std::vector<PiScalar>> exact_sigma_values(const ModelSet& set)
{
    validate(set);
    if (is_unit_side(set)) {
        return std::nullopt;
    }
    const int N = ambient_dimension(set);
    std::vector<PiScalar> v(static_cast<std::size_t>(N) + 1);
    auto at = [&](int i) -> PiScalar& { return v[static_cast<std::size_t>(i)]; };
    if (std::holds_alternative<AmbientSphere>(set)) {
        at(0) = PiScalar(2);
        return v;
    }
    if (const auto* g = std::get_if<GreatSubsphere>(&set)) {
        at(N - g->j) = PiScalar(2);
        return v;
    }
    if (const auto* b = std::get_if<GeodesicBall>(&set); b && b->r == 0.0) {
        at(N) = PiScalar(1);
        return v;
    }
    if (const auto* t = std::get_if<SubsphereTube>(&set); t && t->s == 0.0) {
        at(t->d) = PiScalar(2);
        return v;
    }
    return std::nullopt;
}

} // namespace gkf::lk
