#pragma once

// Independent numerical routes used only for cross-validation: an ODE
// integrator for the Hamiltonian system, a second quadrature, a two-sample
// Kolmogorov-Smirnov test, and exhaustive small-graph enumeration. Nothing
// here is called by the production paths it is checking.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "greedyldp/explorer.hpp"
#include "greedyldp/model.hpp"

namespace greedyldp::oracles {

// ---------------------------------------------------------------- Simpson

namespace detail {
inline double simpson_panel(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
inline double simpson_adapt(F&& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_panel(a, m, fa, flm, fm);
    const double right = simpson_panel(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

template <typename F>
inline double adaptive_simpson(F&& f, double a, double b, double tol = 1e-11, int max_depth = 50) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return detail::simpson_adapt(f, a, b, fa, fm, fb, detail::simpson_panel(a, b, fa, fm, fb),
                                 tol, max_depth);
}

// ------------------------------------------------- Hamiltonian ODE oracle

// State (x, alpha) under x' = 1 + c(1-x)e^alpha, alpha' = c(e^alpha - 1).
struct HamState {
    double x;
    double a;
};

namespace detail {
inline HamState ham_rhs(double c, const HamState& y) {
    return {1.0 + c * (1.0 - y.x) * std::exp(y.a), c * std::expm1(y.a)};
}

inline HamState rk4_step(double c, const HamState& y, double h) {
    const HamState k1 = ham_rhs(c, y);
    const HamState y2{y.x + 0.5 * h * k1.x, y.a + 0.5 * h * k1.a};
    const HamState k2 = ham_rhs(c, y2);
    const HamState y3{y.x + 0.5 * h * k2.x, y.a + 0.5 * h * k2.a};
    const HamState k3 = ham_rhs(c, y3);
    const HamState y4{y.x + h * k3.x, y.a + h * k3.a};
    const HamState k4 = ham_rhs(c, y4);
    return {y.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            y.a + h / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a)};
}

inline HamState rk4_span(double c, HamState y, double h, int substeps) {
    const double hs = h / substeps;
    for (int i = 0; i < substeps; ++i) y = rk4_step(c, y, hs);
    return y;
}
} // namespace detail

// First time x reaches 1, by adaptive step-doubling RK4 with bisected event
// refinement. Independent of the closed-form trajectory.
inline double ham_ode_exit_time(double c, double alpha0, double tol = 1e-12) {
    HamState y{0.0, alpha0};
    double t = 0.0;
    double h = 1e-3;
    long steps = 0;
    while (steps++ < 10'000'000) {
        if (h < 1e-15) h = 1e-15;
        const HamState big = detail::rk4_step(c, y, h);
        const HamState half = detail::rk4_span(c, y, h, 2);
        const double err = std::max(std::abs(big.x - half.x), std::abs(big.a - half.a)) / 15.0;
        const double scale = std::max({1.0, std::abs(y.x), std::abs(y.a)});
        if (err > tol * scale && h > 1e-14) {
            h *= std::max(0.2, 0.9 * std::pow(tol * scale / err, 0.2));
            continue;
        }
        const HamState next{half.x + (half.x - big.x) / 15.0, half.a + (half.a - big.a) / 15.0};
        if (next.x >= 1.0) {
            // event inside (t, t+h]: bisect the substep length
            double lo = 0.0, hi = h;
            for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
                const double mid = 0.5 * (lo + hi);
                const HamState probe = detail::rk4_span(c, y, mid, 64);
                if (probe.x >= 1.0) hi = mid; else lo = mid;
            }
            return t + 0.5 * (lo + hi);
        }
        y = next;
        t += h;
        if (err > 0.0) h *= std::min(5.0, 0.9 * std::pow(tol * scale / err, 0.2));
        if (t > 10.0) throw std::runtime_error("ham_ode_exit_time: no exit before t = 10");
    }
    throw std::runtime_error("ham_ode_exit_time: step limit exceeded");
}

// ------------------------------------------------------- two-sample KS

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_q(double lambda) {
    if (lambda < 1e-10) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-18) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

// Two-sample KS p-value for integer samples (ties handled by comparing the
// empirical CDFs on the merged support).
inline double ks_two_sample_p(std::vector<long> a, std::vector<long> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const long v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
}

// ------------------------------------- exhaustive small-graph enumeration

namespace detail {
inline void enumerate_orders(const Graph& g, std::vector<char>& explored, long n_explored,
                             long steps, double prob, std::vector<double>& pmf) {
    const long n = g.n;
    if (n_explored == n) {
        pmf[static_cast<std::size_t>(steps)] += prob;
        return;
    }
    long unexplored = 0;
    for (long v = 0; v < n; ++v)
        if (!explored[static_cast<std::size_t>(v)]) ++unexplored;
    const double pick = prob / static_cast<double>(unexplored);
    for (long v = 0; v < n; ++v) {
        if (explored[static_cast<std::size_t>(v)]) continue;
        std::vector<long> touched{v};
        explored[static_cast<std::size_t>(v)] = 1;
        for (int w : g.adjacency[static_cast<std::size_t>(v)]) {
            if (!explored[static_cast<std::size_t>(w)]) {
                explored[static_cast<std::size_t>(w)] = 1;
                touched.push_back(w);
            }
        }
        enumerate_orders(g, explored, n_explored + static_cast<long>(touched.size()), steps + 1,
                         pick, pmf);
        for (long w : touched) explored[static_cast<std::size_t>(w)] = 0;
    }
}
} // namespace detail

// Exact stop-time law of the greedy exploration on G(n, c/n) by summing over
// every labelled graph (weighted by its edge probabilities) and every uniform
// selection order. Exponential in n; intended for n <= 5.
inline std::vector<double> enumerate_stop_time_pmf(long n, double c) {
    if (n < 1 || n > 6) throw std::invalid_argument("enumerate_stop_time_pmf: n in [1,6] only");
    const double p = c / static_cast<double>(n);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const std::size_t np = pairs.size();

    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t mask = 0; mask < (std::size_t{1} << np); ++mask) {
        Graph g;
        g.n = n;
        g.adjacency.assign(static_cast<std::size_t>(n), {});
        double weight = 1.0;
        for (std::size_t e = 0; e < np; ++e) {
            if (mask & (std::size_t{1} << e)) {
                weight *= p;
                g.adjacency[static_cast<std::size_t>(pairs[e].first)].push_back(pairs[e].second);
                g.adjacency[static_cast<std::size_t>(pairs[e].second)].push_back(pairs[e].first);
            } else {
                weight *= 1.0 - p;
            }
        }
        std::vector<char> explored(static_cast<std::size_t>(n), 0);
        detail::enumerate_orders(g, explored, 0, 0, weight, pmf);
    }
    return pmf;
}

} // namespace greedyldp::oracles
