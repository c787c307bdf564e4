#pragma once

#include <cmath>
#include <stdexcept>

namespace greedyldp {

// Principal branch W0 of w e^w = x for x >= -1/e, by Halley iteration to
// relative error 1e-14. Initial guesses: branch-point series near -1/e,
// series near 0, asymptotic log form for large x.
inline double lambert_w0(double x) {
    const double inv_e = std::exp(-1.0);
    if (x < -inv_e) throw std::domain_error("lambert_w0: x >= -1/e required");
    if (x == 0.0) return 0.0;

    double w;
    if (x < -0.25) {
        const double s2 = 2.0 * (std::max)(0.0, 1.0 + std::exp(1.0) * x);
        const double s = std::sqrt(s2);
        w = -1.0 + s - s2 / 6.0 + 11.0 / 72.0 * s * s2;
        if (s < 1e-4) return w; // series error ~ s^4; Halley near w = -1 is ill-conditioned
    } else if (x < 0.5) {
        w = x * (1.0 - x * (1.0 - 1.5 * x));
    } else if (x < std::exp(1.0)) {
        w = std::log1p(x) * 0.75;
    } else {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    for (int i = 0; i < 60; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double wp1 = w + 1.0;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 1e-14 * (std::abs(w) + 1e-300)) return w;
    }
    return w;
}

} // namespace greedyldp
