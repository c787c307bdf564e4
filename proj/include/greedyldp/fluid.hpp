#pragma once

#include <cmath>
#include <stdexcept>

namespace greedyldp {

namespace detail {
inline void require_positive_c(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
}
} // namespace detail

// Solution of z' = 1 + c(1-z), z(0) = 0, without the cap at 1. expm1 keeps
// the small-ct evaluation free of cancellation.
inline double fluid_z_unclipped(double c, double t) {
    detail::require_positive_c(c);
    if (t < 0.0) throw std::invalid_argument("fluid_z: t >= 0 required");
    return -(1.0 + c) / c * std::expm1(-c * t);
}

// Macroscopic explored fraction at time t: min(z(t), 1).
inline double fluid_z(double c, double t) {
    const double z = fluid_z_unclipped(c, t);
    return z < 1.0 ? z : 1.0;
}

// Time at which the fluid limit reaches 1; always in (0, 1).
inline double t_star(double c) {
    detail::require_positive_c(c);
    return std::log1p(c) / c;
}

// Variance of the Gaussian limit of sqrt(n) * (T/n - t_star).
inline double clt_sigma2(double c) {
    detail::require_positive_c(c);
    return c / (2.0 * (c + 1.0) * (c + 1.0));
}

} // namespace greedyldp
