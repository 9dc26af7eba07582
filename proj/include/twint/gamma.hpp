#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twint {

namespace detail {

// Lanczos coefficients for g = 7, n = 9.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline bool is_pole(double z) { return z <= 0.0 && z == std::floor(z); }

}  // namespace detail

/// Gamma function: Lanczos for z >= 1/2, reflection below.
inline double gamma_fn(double z) {
    if (detail::is_pole(z)) throw std::domain_error("gamma evaluated at a pole");
    if (z < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma_fn(1.0 - z));
    z -= 1.0;
    double x = detail::kLanczos[0];
    for (int i = 1; i < 9; ++i) x += detail::kLanczos[i] / (z + i);
    double t = z + detail::kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

/// 1/Gamma(z); zero at the poles.
inline double rgamma(double z) {
    if (detail::is_pole(z)) return 0.0;
    if (z < 0.5) return std::sin(std::numbers::pi * z) * gamma_fn(1.0 - z) / std::numbers::pi;
    return 1.0 / gamma_fn(z);
}

}  // namespace twint
