#pragma once

// The runnable invariant suite behind `greedyldp verify` (and reused by the
// test binaries). Each check returns pass/fail plus a one-line detail and is
// independent of the code path it validates wherever an alternative route
// exists (numeric Legendre maximization, ODE integration, enumeration,
// Monte Carlo).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "greedyldp/greedyldp.hpp"
#include "greedyldp/selfcheck/oracles.hpp"

namespace greedyldp::checks {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckOptions {
    bool quick = false;
    std::optional<double> c;      // single-check overrides
    std::optional<double> alpha0;
    std::uint64_t seed = 20240801u;
};

namespace detail {

inline std::string fmt(double v) { return format17(v); }

inline CheckResult done(std::string name, bool pass, std::string detail) {
    return CheckResult{std::move(name), pass, std::move(detail)};
}

inline std::vector<double> default_alpha0_grid(const CheckOptions& o) {
    if (o.alpha0) return {*o.alpha0};
    return {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
}

inline std::vector<double> default_c_grid(const CheckOptions& o) {
    if (o.c) return {*o.c};
    return {0.5, 1.0, 3.0};
}

} // namespace detail

// --------------------------------------------------------------- seeds

inline CheckResult check_seeds(const CheckOptions& o) {
    if (derive_seed(0, 0) != 16294208416658607535ULL)
        return detail::done("seeds", false, "pinned derive_seed(0,0) changed");
    const long n_masters = o.quick ? 100'000 : 1'000'000;
    for (long s = 0; s < n_masters; ++s) {
        const auto a = derive_seed(static_cast<std::uint64_t>(s), 0);
        if (a != derive_seed(static_cast<std::uint64_t>(s), 0))
            return detail::done("seeds", false, "derive_seed not deterministic");
        if (a == derive_seed(static_cast<std::uint64_t>(s), 1))
            return detail::done("seeds", false, "stream 0/1 collision at master " + std::to_string(s));
    }
    for (std::uint64_t master : {0ull, 1ull, 0xDEADBEEFull, 0xFFFFFFFFFFFFFFFFull}) {
        std::set<std::uint64_t> seen;
        for (std::uint64_t i = 0; i < 1024; ++i) seen.insert(derive_seed(master, i));
        if (seen.size() != 1024)
            return detail::done("seeds", false, "stream collision under master " + std::to_string(master));
    }
    return detail::done("seeds", true,
                        std::to_string(n_masters) + " masters, indices 0..1023 collision-free");
}

// ------------------------------------------------------------- legendre

inline CheckResult check_legendre(const CheckOptions& o) {
    const std::vector<double> cs = o.c ? std::vector<double>{*o.c} : std::vector<double>{0.5, 1.0, 2.0};
    double worst = 0.0;
    for (double c : cs) {
        for (double x = 0.0; x < 0.95; x += 0.1) {
            // L(x, beta) = sup_alpha { alpha beta - H(x, alpha) } by ternary search
            for (double beta : {1.01, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0}) {
                double lo = -60.0, hi = 60.0;
                for (int it = 0; it < 300; ++it) {
                    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                    const auto val = [&](double a) { return a * beta - hamiltonian_H(c, x, a); };
                    if (val(m1) < val(m2)) lo = m1; else hi = m2;
                }
                const double sup = 0.5 * (lo + hi) * beta - hamiltonian_H(c, x, 0.5 * (lo + hi));
                worst = std::max(worst, std::abs(sup - cost_L(c, x, beta).value()));
            }
            // H(x, alpha) = sup_beta { alpha beta - L(x, beta) }
            for (double alpha = -3.0; alpha <= 3.0 + 1e-12; alpha += 0.5) {
                double best = alpha * 1.0 - c * (1.0 - x); // beta = 1 endpoint
                double lo = 1.0 + 1e-14, hi = 1.0 + c * (1.0 - x) * std::exp(alpha + 4.0) + 10.0;
                for (int it = 0; it < 300; ++it) {
                    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                    const auto val = [&](double b) { return alpha * b - cost_L(c, x, b).value(); };
                    if (val(m1) < val(m2)) lo = m1; else hi = m2;
                }
                best = std::max(best, alpha * 0.5 * (lo + hi) - cost_L(c, x, 0.5 * (lo + hi)).value());
                worst = std::max(worst, std::abs(best - hamiltonian_H(c, x, alpha)));
            }
        }
    }
    return detail::done("legendre", worst < 1e-6, "worst conjugacy gap " + detail::fmt(worst));
}

// ----------------------------------------------------- poisson-identity

inline CheckResult check_poisson_identity(const CheckOptions&) {
    for (double c : {0.5, 1.0, 2.0, 5.0})
        for (double x = 0.0; x < 0.95; x += 0.05)
            for (double beta = 1.001; beta < 8.0; beta += 0.25) {
                const double a = cost_L(c, x, beta).value();
                const double b = poisson_rate(c * (1.0 - x), beta - 1.0).value();
                if (a != b)
                    return detail::done("poisson-identity", false,
                                        "mismatch at c=" + detail::fmt(c) + " x=" + detail::fmt(x) +
                                            " beta=" + detail::fmt(beta));
            }
    if (!(poisson_rate(2.0, 2.0).value() == 0.0))
        return detail::done("poisson-identity", false, "rate at the mean is not 0");
    if (!poisson_rate(1.0, -0.5).is_infinite())
        return detail::done("poisson-identity", false, "negative u must be +inf");
    return detail::done("poisson-identity", true, "bitwise equality on the full grid");
}

// --------------------------------------------------------- conservation

inline CheckResult check_conservation(const CheckOptions& o) {
    double worst = 0.0;
    for (double c : detail::default_c_grid(o)) {
        for (double a0 : detail::default_alpha0_grid(o)) {
            const HamTrajectory traj = make_ham_trajectory(c, a0);
            const double h0 = hamiltonian_H(c, 0.0, a0);
            const double T = traj.exit_time;
            // stop just short of T: the last ~1e-6 T sliver has 1 - x below
            // double resolution, which says nothing about conservation
            for (int i = 0; i < 2000; ++i) {
                const double t = T * static_cast<double>(i) / 2000.0;
                worst = std::max(worst, std::abs(hamiltonian_H(c, traj.x(t), traj.alpha(t)) - h0));
            }
            const double t_last = T * (1.0 - 1e-6);
            worst = std::max(worst, std::abs(hamiltonian_H(c, traj.x(t_last), traj.alpha(t_last)) - h0));
        }
    }
    return detail::done("conservation", worst < 1e-8, "sup |H(x,alpha)-H0| = " + detail::fmt(worst));
}

// ---------------------------------------------------------- el-residual

inline CheckResult check_el_residual(const CheckOptions& o) {
    const double h = 1e-4;
    const auto residual = [](const HamTrajectory& tr, double c, double t, double hh) {
        const double xm = tr.x(t - hh), x0 = tr.x(t), xp = tr.x(t + hh);
        const double xd = (xp - xm) / (2.0 * hh);
        const double xdd = (xp - 2.0 * x0 + xm) / (hh * hh);
        return (x0 - 1.0) * xdd + (c * x0 - (1.0 + c)) * xd - c * x0 + (1.0 + c);
    };
    double worst_plain = 0.0, worst_used = 0.0;
    bool any_extrapolated = false;
    for (double c : detail::default_c_grid(o)) {
        for (double a0 : detail::default_alpha0_grid(o)) {
            const HamTrajectory traj = make_ham_trajectory(c, a0);
            const double lo = 0.01, hi = traj.exit_time - 0.01;
            if (hi <= lo) continue;
            for (int i = 0; i <= 400; ++i) {
                const double t = lo + (hi - lo) * static_cast<double>(i) / 400.0;
                const double r1 = residual(traj, c, t, h);
                worst_plain = std::max(worst_plain, std::abs(r1));
                double used = std::abs(r1);
                if (used >= 1e-4) {
                    // h^2 truncation dominates on very steep stretches;
                    // extrapolate it away before judging
                    const double r2 = residual(traj, c, t, 2.0 * h);
                    used = std::abs((4.0 * r1 - r2) / 3.0);
                    any_extrapolated = true;
                }
                worst_used = std::max(worst_used, used);
            }
        }
    }
    std::ostringstream oss;
    oss << "worst residual " << detail::fmt(worst_used) << " (plain h=1e-4: "
        << detail::fmt(worst_plain) << (any_extrapolated ? ", Richardson applied on steep points)" : ")");
    return detail::done("el-residual", worst_used < 1e-4, oss.str());
}

// --------------------------------------------------------- monotonicity

inline CheckResult check_monotonicity(const CheckOptions& o) {
    const double c = o.c.value_or(1.0);
    const std::vector<double> grid = {-3.0, -2.5, -2.0, -1.5, -1.0, -0.75, -0.5, -0.3, -0.2, -0.1,
                                      -0.05, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5};
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const HamTrajectory a = make_ham_trajectory(c, grid[i]);
        const HamTrajectory b = make_ham_trajectory(c, grid[i + 1]);
        if (!(a.exit_time > b.exit_time))
            return detail::done("monotonicity", false,
                                "exit times not decreasing between alpha0=" + detail::fmt(grid[i]) +
                                    " and " + detail::fmt(grid[i + 1]));
        const double tmax = std::min(a.exit_time, b.exit_time) * 0.98;
        for (int j = 1; j <= 50; ++j) {
            const double t = tmax * static_cast<double>(j) / 50.0;
            if (!(a.x(t) < b.x(t)))
                return detail::done("monotonicity", false,
                                    "x ordering violated at t=" + detail::fmt(t) + " for pair " +
                                        detail::fmt(grid[i]) + "," + detail::fmt(grid[i + 1]));
        }
    }
    return detail::done("monotonicity", true, "20 ordered pairs, x and exit-time ordering hold");
}

// ------------------------------------------------------ clock-dominance

inline CheckResult check_clock_dominance(const CheckOptions& o) {
    for (double c : detail::default_c_grid(o)) {
        for (double a0 : (o.alpha0 ? std::vector<double>{*o.alpha0}
                                   : std::vector<double>{-5.0, -1.0, -0.1, 0.1, 1.0, 2.0})) {
            const HamTrajectory traj = make_ham_trajectory(c, a0);
            for (int i = 1; i <= 100; ++i) {
                const double t = traj.exit_time * static_cast<double>(i) / 101.0;
                if (!(traj.x(t) > t))
                    return detail::done("clock-dominance", false,
                                        "x(t) <= t at c=" + detail::fmt(c) + " alpha0=" +
                                            detail::fmt(a0) + " t=" + detail::fmt(t));
            }
        }
    }
    return detail::done("clock-dominance", true, "x(t) > t on all grids");
}

// ------------------------------------------------------------ rate-zero

inline CheckResult check_rate_zero(const CheckOptions& o) {
    if (rate_F(1.0, 0.0).value.value() != 0.0)
        return detail::done("rate-zero", false, "F(0) must be exactly 0");
    double least = std::numeric_limits<double>::infinity();
    for (double c : detail::default_c_grid(o))
        for (double a0 : {-2.0, -1.0, -0.5, -0.1, -0.05, 0.05, 0.1, 0.5, 1.0, 2.0}) {
            const double f = rate_F(c, a0).value.value();
            least = std::min(least, f);
            if (!(f > 1e-6))
                return detail::done("rate-zero", false,
                                    "F not positive at c=" + detail::fmt(c) + " alpha0=" + detail::fmt(a0));
        }
    return detail::done("rate-zero", true, "F(0)=0 and min F off zero = " + detail::fmt(least));
}

// ----------------------------------------------------- alpha0-continuity

inline CheckResult check_alpha0_continuity(const CheckOptions& o) {
    for (double c : detail::default_c_grid(o)) {
        for (double sign : {1.0, -1.0}) {
            double prev = std::numeric_limits<double>::infinity();
            for (double mag : {1e-1, 1e-2, 1e-3}) {
                const HamTrajectory traj = make_ham_trajectory(c, sign * mag);
                double sup = 0.0;
                for (int i = 0; i <= 200; ++i) {
                    const double t = traj.exit_time * static_cast<double>(i) / 200.0;
                    sup = std::max(sup, std::abs(traj.x(t) - fluid_z(c, t)));
                }
                if (!(sup < prev))
                    return detail::done("alpha0-continuity", false,
                                        "sup deviation not decreasing at c=" + detail::fmt(c) +
                                            " alpha0=" + detail::fmt(sign * mag));
                prev = sup;
            }
            if (!(prev < 1e-2))
                return detail::done("alpha0-continuity", false,
                                    "alpha0=1e-3 extremal too far from the fluid limit");
        }
    }
    return detail::done("alpha0-continuity", true, "sup |x_a0 - z| decreases to 0 on both sides");
}

// ----------------------------------------------------------- dual-route

inline CheckResult check_dual_route(const CheckOptions& o) {
    const std::vector<double> cs = o.c ? std::vector<double>{*o.c} : std::vector<double>{0.5, 1.0, 3.0};
    const std::vector<double> a0s =
        o.alpha0 ? std::vector<double>{*o.alpha0} : std::vector<double>{-1.0, -0.5, 0.5, 1.0};
    double worst_rate = 0.0, worst_exit = 0.0;
    for (double c : cs) {
        for (double a0 : a0s) {
            const HamTrajectory traj = make_ham_trajectory(c, a0);
            const double f_simplified = rate_F(c, a0).value.value();
            const double upper = traj.exit_time - 1e-12;
            const double f_cost = oracles::adaptive_simpson(
                [&](double t) { return cost_L(c, traj.x(t), traj.x_dot(t)).value(); }, 0.0, upper);
            worst_rate = std::max(worst_rate, std::abs(f_simplified - f_cost));
            const double t_ode = oracles::ham_ode_exit_time(c, a0);
            worst_exit = std::max(worst_exit, std::abs(traj.exit_time - t_ode));
        }
    }
    const bool pass = worst_rate < 1e-8 && worst_exit < 1e-8;
    return detail::done("dual-route", pass,
                        "max |F_simplified - int L| = " + detail::fmt(worst_rate) +
                            ", max |exit - ode exit| = " + detail::fmt(worst_exit));
}

// ------------------------------------------------------- exit-roundtrip

inline CheckResult check_exit_roundtrip(const CheckOptions& o) {
    double worst = 0.0;
    for (double c : detail::default_c_grid(o)) {
        const double ts = t_star(c);
        if (std::abs(invert_exit_time(c, ts)) > 1e-9)
            return detail::done("exit-roundtrip", false, "alpha0(t_star) != 0 at c=" + detail::fmt(c));
        for (double T : {0.35 * ts, 0.6 * ts, 0.85 * ts, ts + 0.6 * (1 - ts), ts + 0.3 * (1 - ts)}) {
            const double a0 = invert_exit_time(c, T);
            if ((T > ts && a0 >= 0.0) || (T < ts && a0 <= 0.0))
                return detail::done("exit-roundtrip", false,
                                    "sign contract broken at c=" + detail::fmt(c) + " T=" + detail::fmt(T));
            const double back = make_ham_trajectory(c, a0).exit_time;
            worst = std::max(worst, std::abs(back - T));
        }
    }
    return detail::done("exit-roundtrip", worst < 1e-9, "worst round-trip gap " + detail::fmt(worst));
}

// ------------------------------------------------------------- dp-small

inline CheckResult check_dp_small(const CheckOptions&) {
    const auto d1 = exact_stop_time_distribution(ModelParams(1.0, 1));
    if (std::abs(d1.pmf[1] - 1.0) > 1e-15)
        return detail::done("dp-small", false, "n=1 pmf wrong");
    const auto d2 = exact_stop_time_distribution(ModelParams(1.0, 2));
    if (std::abs(d2.pmf[1] - 0.5) > 1e-15 || std::abs(d2.pmf[2] - 0.5) > 1e-15)
        return detail::done("dp-small", false, "n=2 c=1 pmf wrong");
    const auto d3 = exact_stop_time_distribution(ModelParams(1.0, 3));
    const double e1 = 1.0 / 9.0, e2 = 16.0 / 27.0, e3 = 8.0 / 27.0;
    const double gap = std::max({std::abs(d3.pmf[1] - e1), std::abs(d3.pmf[2] - e2),
                                 std::abs(d3.pmf[3] - e3)});
    if (gap > 1e-13) return detail::done("dp-small", false, "n=3 c=1 pmf gap " + detail::fmt(gap));
    if (std::abs(tail_log_prob(d3, 0.9, TailSide::upper) - std::log(e3)) > 1e-12)
        return detail::done("dp-small", false, "n=3 upper tail at 0.9 wrong");
    if (std::abs(tail_log_prob(d2, 0.6, TailSide::lower) - std::log(0.5)) > 1e-12)
        return detail::done("dp-small", false, "n=2 lower tail at 0.6 wrong");
    if (tail_log_prob(d3, 0.2, TailSide::upper) != 0.0)
        return detail::done("dp-small", false, "whole-mass upper tail must be log 1 = 0");
    return detail::done("dp-small", true, "n=1,2,3 laws exact; tail slicing exact");
}

// --------------------------------------------------------------- dp-sum

inline CheckResult check_dp_sum(const CheckOptions& o) {
    std::vector<long> ns;
    if (o.quick) {
        for (long n = 1; n <= 60; ++n) ns.push_back(n);
        ns.insert(ns.end(), {100, 150, 200});
    } else {
        for (long n = 1; n <= 200; ++n) ns.push_back(n);
    }
    double worst_sum = 0.0;
    for (long n : ns) {
        for (double c : {0.5, 1.0, 2.0, 5.0}) {
            if (c > static_cast<double>(n)) continue;
            const auto d = exact_stop_time_distribution(ModelParams(c, n));
            double sum = 0.0, mean = 0.0;
            for (long k = 1; k <= n; ++k) {
                const double pk = d.pmf[static_cast<std::size_t>(k)];
                if (pk < 0.0)
                    return detail::done("dp-sum", false, "negative mass at n=" + std::to_string(n));
                sum += pk;
                mean += static_cast<double>(k) * pk;
            }
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
            const double lo = static_cast<double>(n) / (1.0 + c);
            if (!(mean >= lo - 1e-9 && mean <= static_cast<double>(n) + 1e-9))
                return detail::done("dp-sum", false,
                                    "mean " + detail::fmt(mean) + " outside [n/(1+c), n] at n=" +
                                        std::to_string(n) + " c=" + detail::fmt(c));
        }
    }
    return detail::done("dp-sum", worst_sum < 1e-12,
                        "worst |sum-1| = " + detail::fmt(worst_sum) + " over " +
                            std::to_string(ns.size()) + " sizes x 4 densities");
}

// ----------------------------------------------------- enum-consistency

inline CheckResult check_enum_consistency(const CheckOptions&) {
    {
        const auto enumd = oracles::enumerate_stop_time_pmf(3, 1.0);
        const auto dp = exact_stop_time_distribution(ModelParams(1.0, 3));
        for (long k = 1; k <= 3; ++k)
            if (std::abs(enumd[static_cast<std::size_t>(k)] - dp.pmf[static_cast<std::size_t>(k)]) > 1e-13)
                return detail::done("enum-consistency", false, "n=3 c=1 mismatch at k=" + std::to_string(k));
    }
    {
        const auto enumd = oracles::enumerate_stop_time_pmf(4, 1.5);
        const auto dp = exact_stop_time_distribution(ModelParams(1.5, 4));
        for (long k = 1; k <= 4; ++k)
            if (std::abs(enumd[static_cast<std::size_t>(k)] - dp.pmf[static_cast<std::size_t>(k)]) > 1e-13)
                return detail::done("enum-consistency", false, "n=4 c=1.5 mismatch at k=" + std::to_string(k));
    }
    return detail::done("enum-consistency", true, "graph-level enumeration equals the DP (n=3, n=4)");
}

// --------------------------------------------------------- bound-curves

inline CheckResult check_bound_curves(const CheckOptions&) {
    for (double c = 0.05; c < 2.70; c += 0.05)
        if (!(sigma1_star(c) > t_star(c)))
            return detail::done("bound-curves", false, "sigma1* <= t_star at c=" + detail::fmt(c));

    const auto continuous = [](const std::vector<double>& ys) {
        for (std::size_t i = 2; i < ys.size(); ++i) {
            const double prev = std::abs(ys[i - 1] - ys[i - 2]) + 1e-12;
            if (std::abs(ys[i] - ys[i - 1]) > 10.0 * prev) return false;
        }
        return true;
    };

    std::vector<double> r1;
    for (int i = 0; i < 25; ++i) {
        const double c = 0.2 + (2.6 - 0.2) * static_cast<double>(i) / 24.0;
        const double rate = bound_rate(c, BoundKind::sigma1).value.value();
        if (!(rate > 0.0) || !std::isfinite(rate))
            return detail::done("bound-curves", false, "sigma1 rate not positive at c=" + detail::fmt(c));
        r1.push_back(rate);
    }
    std::vector<double> r2;
    double prev_sigma2 = 1.0;
    for (int i = 0; i < 29; ++i) {
        const double c = 3.0 + (10.0 - 3.0) * static_cast<double>(i) / 28.0;
        const double s2 = sigma2_star(c);
        if (!(s2 < prev_sigma2))
            return detail::done("bound-curves", false, "sigma2* not decreasing at c=" + detail::fmt(c));
        prev_sigma2 = s2;
        const double rate = bound_rate(c, BoundKind::sigma2).value.value();
        if (!(rate > 0.0) || !std::isfinite(rate))
            return detail::done("bound-curves", false, "sigma2 rate not positive at c=" + detail::fmt(c));
        r2.push_back(rate);
    }
    if (!continuous(r1) || !continuous(r2))
        return detail::done("bound-curves", false, "rate curve has a jump > 10x neighbor differences");
    return detail::done("bound-curves", true, "both bound-rate curves positive, finite, continuous");
}

// -------------------------------------------------------------- lambert

inline CheckResult check_lambert(const CheckOptions&) {
    struct Pin {
        double got, want;
        const char* what;
    };
    const double e = std::exp(1.0);
    const Pin pins[] = {
        {lambert_w0(1.0), 0.56714329040978387, "W(1)"},
        {lambert_w0(e), 1.0, "W(e)"},
        {lambert_w0(0.0), 0.0, "W(0)"},
        {sigma1_star(1.0), 0.72796904633820210, "sigma1*(1)"},
        {sigma1_star(std::nextafter(e, 0.0)), 0.55181916175716348, "sigma1*(e-)"},
        {sigma2_star(3.0), 0.73240819244540646, "sigma2*(3)"},
        {sigma2_star(4.0), 0.69314718055994531, "sigma2*(4)"},
    };
    for (const auto& p : pins)
        if (std::abs(p.got - p.want) > 1e-9)
            return detail::done("lambert", false,
                                std::string(p.what) + " = " + detail::fmt(p.got) + ", want " +
                                    detail::fmt(p.want));
    for (double lx = -30.0; lx <= 290.0; lx += 0.37) {
        const double x = std::exp(lx);
        const double w = lambert_w0(x);
        if (std::abs(w * std::exp(w) - x) > 1e-12 * std::max(1.0, std::abs(x)))
            return detail::done("lambert", false, "identity residual too large at x=" + detail::fmt(x));
    }
    return detail::done("lambert", true, "pinned values within 1e-9, identity within 1e-12 relative");
}

// ------------------------------------------------------------ path-rate

inline CheckResult check_path_rate(const CheckOptions&) {
    const double c = 1.0;
    {
        std::vector<double> ts, vs;
        const long grid = 10'000;
        for (long j = 0; j <= grid; ++j) {
            const double t = static_cast<double>(j) / static_cast<double>(grid);
            ts.push_back(t);
            vs.push_back(fluid_z(c, t));
        }
        const auto r = path_rate(c, ScaledPath(std::move(ts), std::move(vs), Interpolation::linear));
        if (!(r.value.is_finite() && r.value.value() < 1e-6))
            return detail::done("path-rate", false,
                                "sampled fluid limit should cost < 1e-6, got " +
                                    (r.value.is_finite() ? detail::fmt(r.value.value()) : "inf"));
    }
    {
        const auto r = path_rate(c, ScaledPath({0.0, 1.0}, {0.0, 1.0}, Interpolation::linear));
        if (std::abs(r.value.value() - 0.5) > 1e-12)
            return detail::done("path-rate", false, "I(t -> t) != 1/2");
    }
    {
        const auto r = path_rate(c, ScaledPath({0.0, 0.5, 1.0}, {0.0, 1.0, 1.0}, Interpolation::linear));
        // oracle: direct quadrature of L(2t, 2) over [0, 1/2], itself checked
        // against its own 10x refinement
        const auto f = [c](double t) { return cost_L(c, std::min(2.0 * t, 1.0 - 1e-16), 2.0).value(); };
        const auto q1 = integrate_gk15(f, 0.0, 0.5, 1e-10);
        const auto q2 = integrate_gk15(f, 0.0, 0.5, 1e-12, 1L << 18);
        if (std::abs(q1.value - q2.value) > 1e-8)
            return detail::done("path-rate", false, "oracle quadrature did not self-converge");
        if (std::abs(r.value.value() - q1.value) > 1e-8)
            return detail::done("path-rate", false,
                                "I(min(2t,1)) = " + detail::fmt(r.value.value()) + " vs quadrature " +
                                    detail::fmt(q1.value));
    }
    {
        const auto bad = path_rate(c, ScaledPath({0.0, 1.0}, {0.0, 0.5}, Interpolation::linear));
        if (!bad.value.is_infinite())
            return detail::done("path-rate", false, "slope 1/2 below the boundary must be +inf");
        const auto jump =
            path_rate(c, ScaledPath({0.0, 0.5, 0.5, 1.0}, {0.0, 0.5, 0.9, 1.0}, Interpolation::linear));
        if (!jump.value.is_infinite())
            return detail::done("path-rate", false, "jump path must be +inf");
        const auto step = path_rate(c, ScaledPath({0.0, 0.5}, {0.0, 1.0}, Interpolation::step), true);
        if (!step.value.is_infinite())
            return detail::done("path-rate", false, "step path must be +inf under the explicit flag");
    }
    return detail::done("path-rate", true, "fluid sample ~0, analytic values and +inf branches agree");
}

// ------------------------------------------------------------ fluid-ode

inline CheckResult check_fluid_ode(const CheckOptions&) {
    const double h = 1e-5;
    double worst = 0.0;
    for (double c : {0.5, 1.0, 2.0, 5.0}) {
        const double T = t_star(c);
        if (!(T > 0.0 && T < 1.0))
            return detail::done("fluid-ode", false, "t_star outside (0,1) at c=" + detail::fmt(c));
        for (int i = 1; i < 100; ++i) {
            const double t = (T - 2.0 * h) * static_cast<double>(i) / 100.0 + h;
            const double zd = (fluid_z_unclipped(c, t + h) - fluid_z_unclipped(c, t - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(zd - (1.0 + c * (1.0 - fluid_z_unclipped(c, t)))));
        }
        if (std::abs(fluid_z(c, T) - 1.0) > 1e-12)
            return detail::done("fluid-ode", false, "z(t_star) != 1 at c=" + detail::fmt(c));
    }
    double prev = 2.0;
    for (double c = 0.1; c <= 10.0; c += 0.1) {
        if (!(t_star(c) < prev)) return detail::done("fluid-ode", false, "t_star not decreasing in c");
        prev = t_star(c);
    }
    const double peak = clt_sigma2(1.0);
    for (double c = 0.1; c <= 10.0; c += 0.1)
        if (clt_sigma2(c) > peak + 1e-15)
            return detail::done("fluid-ode", false, "clt variance not maximized at c=1");
    return detail::done("fluid-ode", worst < 1e-6, "worst ODE residual " + detail::fmt(worst));
}

// ------------------------------------------------------ slow MC checks

inline CheckResult check_mc_consistency(const CheckOptions& o) {
    const long n = 50;
    const double c = 1.0;
    const long reps = o.quick ? 200'000 : 1'000'000;
    const ModelParams params(c, n);
    std::vector<double> emp(static_cast<std::size_t>(n) + 1, 0.0);
    for (long r = 0; r < reps; ++r)
        emp[static_cast<std::size_t>(simulate_chain(params, derive_seed(o.seed, static_cast<std::uint64_t>(r))).stop_time)] += 1.0;
    const auto dp = exact_stop_time_distribution(params);
    double tv = 0.0;
    for (long k = 1; k <= n; ++k)
        tv += std::abs(emp[static_cast<std::size_t>(k)] / static_cast<double>(reps) -
                       dp.pmf[static_cast<std::size_t>(k)]);
    tv *= 0.5;
    return detail::done("mc-consistency", tv < 0.005,
                        "TV(empirical, DP) = " + detail::fmt(tv) + " over " + std::to_string(reps) +
                            " runs");
}

inline CheckResult check_lln(const CheckOptions& o) {
    const long n = 100'000;
    const double c = 1.0;
    const long reps = o.quick ? 20 : 100;
    double mean = 0.0;
    for (long r = 0; r < reps; ++r)
        mean += static_cast<double>(
                    simulate_chain(ModelParams(c, n), derive_seed(o.seed + 1, static_cast<std::uint64_t>(r))).stop_time) /
                static_cast<double>(n);
    mean /= static_cast<double>(reps);
    const double gap = std::abs(mean - t_star(c));
    return detail::done("lln", gap < 0.005, "mean T/n off t_star by " + detail::fmt(gap));
}

inline CheckResult check_clt(const CheckOptions& o) {
    const long n = 10'000;
    const double c = 1.0;
    const long reps = o.quick ? 2'000 : 10'000;
    const double ts = t_star(c);
    double s1 = 0.0, s2 = 0.0;
    for (long r = 0; r < reps; ++r) {
        const double t =
            static_cast<double>(
                simulate_chain(ModelParams(c, n), derive_seed(o.seed + 2, static_cast<std::uint64_t>(r))).stop_time) /
            static_cast<double>(n);
        const double v = std::sqrt(static_cast<double>(n)) * (t - ts);
        s1 += v;
        s2 += v * v;
    }
    const double var = (s2 - s1 * s1 / static_cast<double>(reps)) / static_cast<double>(reps - 1);
    const double want = clt_sigma2(c);
    const double rel = std::abs(var - want) / want;
    return detail::done("clt", rel < 0.10,
                        "sample variance " + detail::fmt(var) + " vs " + detail::fmt(want) +
                            " (rel gap " + detail::fmt(rel) + ")");
}

inline CheckResult check_ks_equivalence(const CheckOptions& o) {
    const long n = 100;
    const double c = 2.0;
    const long reps = o.quick ? 20'000 : 100'000;
    const ModelParams params(c, n);
    std::vector<long> graph_ts, chain_ts;
    graph_ts.reserve(static_cast<std::size_t>(reps));
    chain_ts.reserve(static_cast<std::size_t>(reps));
    for (long r = 0; r < reps; ++r) {
        const auto g = sample_er_graph(params, derive_seed(o.seed + 3, 2 * static_cast<std::uint64_t>(r)));
        graph_ts.push_back(greedy_explore(g, derive_seed(o.seed + 3, 2 * static_cast<std::uint64_t>(r) + 1)).stop_time);
        chain_ts.push_back(simulate_chain(params, derive_seed(o.seed + 4, static_cast<std::uint64_t>(r))).stop_time);
    }
    const double p = oracles::ks_two_sample_p(graph_ts, chain_ts);
    return detail::done("ks-equivalence", p > 0.01,
                        "two-sample KS p = " + detail::fmt(p) + " over " + std::to_string(reps) +
                            " runs each");
}

inline CheckResult check_fluid_sup(const CheckOptions& o) {
    const long n = 100'000;
    const double c = 1.0;
    const long runs = 50;
    int good = 0;
    double worst = 0.0;
    for (long r = 0; r < runs; ++r) {
        const auto traj = simulate_chain(ModelParams(c, n), derive_seed(o.seed + 5, static_cast<std::uint64_t>(r)));
        double sup = 0.0;
        const double nn = static_cast<double>(n);
        for (std::size_t k = 0; k < traj.z.size(); ++k) {
            const double v = static_cast<double>(traj.z[k]) / nn;
            const double t0 = static_cast<double>(k) / nn;
            const double t1 = static_cast<double>(k + 1) / nn;
            sup = std::max({sup, std::abs(v - fluid_z(c, t0)), std::abs(v - fluid_z(c, t1))});
        }
        sup = std::max(sup, 1.0 - fluid_z(c, static_cast<double>(traj.stop_time) / nn));
        worst = std::max(worst, sup);
        if (sup < 0.01) ++good;
    }
    std::ostringstream oss;
    oss << good << "/" << runs << " runs under 0.01 (worst sup " << detail::fmt(worst) << ")";
    return detail::done("fluid-sup", good >= 48, oss.str());
}

// ------------------------------------------------------------- registry

using CheckFn = CheckResult (*)(const CheckOptions&);

struct NamedCheck {
    const char* name;
    CheckFn fn;
    bool slow;
};

inline const std::vector<NamedCheck>& all_checks() {
    static const std::vector<NamedCheck> registry = {
        {"seeds", check_seeds, false},
        {"legendre", check_legendre, false},
        {"poisson-identity", check_poisson_identity, false},
        {"conservation", check_conservation, false},
        {"el-residual", check_el_residual, false},
        {"monotonicity", check_monotonicity, false},
        {"clock-dominance", check_clock_dominance, false},
        {"rate-zero", check_rate_zero, false},
        {"alpha0-continuity", check_alpha0_continuity, false},
        {"dual-route", check_dual_route, false},
        {"exit-roundtrip", check_exit_roundtrip, false},
        {"dp-small", check_dp_small, false},
        {"dp-sum", check_dp_sum, false},
        {"enum-consistency", check_enum_consistency, false},
        {"bound-curves", check_bound_curves, false},
        {"lambert", check_lambert, false},
        {"path-rate", check_path_rate, false},
        {"fluid-ode", check_fluid_ode, false},
        {"mc-consistency", check_mc_consistency, true},
        {"lln", check_lln, true},
        {"clt", check_clt, true},
        {"ks-equivalence", check_ks_equivalence, true},
        {"fluid-sup", check_fluid_sup, true},
    };
    return registry;
}

} // namespace greedyldp::checks
