#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <stdexcept>

namespace greedyldp {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long panels = 0;
    bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7-15 pair (QUADPACK abscissae/weights).
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> gk15_kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk15_gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
    requires std::invocable<F, double>
inline void gk15_panel(F&& f, double a, double b, double& value, double& err) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double fc = f(mid);
    double res_g = gk15_gauss_w[3] * fc;
    double res_k = gk15_kronrod_w[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk15_nodes[static_cast<std::size_t>(i)];
        const double fsum = f(mid - dx) + f(mid + dx);
        res_k += gk15_kronrod_w[static_cast<std::size_t>(i)] * fsum;
        if (i % 2 == 1) res_g += gk15_gauss_w[static_cast<std::size_t>(i / 2)] * fsum;
    }
    value = res_k * half;
    err = std::abs((res_k - res_g) * half);
}

template <typename F>
inline void gk15_adapt(F&& f, double a, double b, double tol, long& budget, QuadratureResult& out) {
    double v = 0.0, e = 0.0;
    gk15_panel(f, a, b, v, e);
    if (e <= tol || budget <= 0) {
        if (e > tol && budget <= 0) out.converged = false;
        out.value += v;
        out.error_estimate += e;
        ++out.panels;
        return;
    }
    --budget;
    const double mid = 0.5 * (a + b);
    gk15_adapt(f, a, mid, 0.5 * tol, budget, out);
    gk15_adapt(f, mid, b, 0.5 * tol, budget, out);
}

} // namespace detail

// Adaptive Gauss-Kronrod 15-point integration of f over [a, b] to the given
// absolute tolerance, with a hard cap on the number of bisections.
template <typename F>
    requires std::invocable<F, double>
inline QuadratureResult integrate_gk15(F&& f, double a, double b, double abs_tol = 1e-10,
                                       long max_panels = 1L << 14) {
    if (!(b >= a)) throw std::invalid_argument("integrate_gk15: b >= a required");
    QuadratureResult out;
    if (a == b) return out;
    long budget = max_panels;
    detail::gk15_adapt(f, a, b, abs_tol, budget, out);
    return out;
}

} // namespace greedyldp
