#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "greedyldp/ext_real.hpp"
#include "greedyldp/fluid.hpp"
#include "greedyldp/lambert.hpp"
#include "greedyldp/model.hpp"
#include "greedyldp/quadrature.hpp"

namespace greedyldp {

// A rate in nats, possibly +infinity, with the optimizing initial momentum
// when one exists.
struct RateValue {
    ExtReal value;
    std::optional<double> optimizer;
};

namespace detail {

inline void require_x_range(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
}

inline double poisson_rate_finite(double lambda, double u) {
    return u * (std::log(u / lambda) - 1.0) + lambda;
}

} // namespace detail

// Cramer rate for the average of Poisson(lambda) variables, continuously
// extended to u = 0; +infinity for u < 0.
inline ExtReal poisson_rate(double lambda, double u) {
    if (!(lambda > 0.0)) throw std::invalid_argument("poisson_rate: lambda > 0 required");
    if (u < 0.0) return ExtReal::infinity();
    if (u == 0.0) return ExtReal(lambda);
    return ExtReal(detail::poisson_rate_finite(lambda, u));
}

// Per-unit-time cost of moving at speed beta with explored fraction x.
// Finite branches: x < 1 with beta > 1, x < 1 with beta = 1 (cost c(1-x)),
// and x = 1 with beta = 0 (cost 0); everything else is +infinity. The
// beta > 1 branch is exactly the Poisson rate at mean c(1-x) and value
// beta - 1.
inline ExtReal cost_L(double c, double x, double beta) {
    detail::require_positive_c(c);
    detail::require_x_range(x);
    if (x < 1.0) {
        if (beta > 1.0) return ExtReal(detail::poisson_rate_finite(c * (1.0 - x), beta - 1.0));
        if (beta == 1.0) return ExtReal(c * (1.0 - x));
        return ExtReal::infinity();
    }
    if (beta == 0.0) return ExtReal(0.0);
    return ExtReal::infinity();
}

// Legendre conjugate of the cost: alpha + c(1-x)(e^alpha - 1) for x < 1,
// identically 0 on the absorbed boundary x = 1.
inline double hamiltonian_H(double c, double x, double alpha) {
    detail::require_positive_c(c);
    detail::require_x_range(x);
    if (x == 1.0) return 0.0;
    return alpha + c * (1.0 - x) * std::expm1(alpha);
}

// Extremal of the rate functional with initial momentum alpha0: the solution
// of x' = 1 + c(1-x)e^alpha, alpha' = c(e^alpha - 1) from (0, alpha0),
// evaluated in closed form via k0 = 1 - e^{-alpha0}. For alpha0 > 0 the
// momentum blows up at the singular time t_s = -log(k0)/c and the trajectory
// is only defined before it; the exit time (first passage of x through 1)
// always precedes t_s.
class HamTrajectory {
public:
    double c = 0.0;
    double alpha0 = 0.0;
    double k0 = 0.0;
    double exit_time = 0.0;
    std::optional<double> singular_time;
    bool bracket_extended = false;

    double x(double t) const { return 1.0 - core(t).one_minus_x; }
    double one_minus_x(double t) const { return core(t).one_minus_x; }
    double alpha(double t) const { return core(t).alpha; }

    // Right-hand side of the x equation at time t.
    double x_dot(double t) const {
        const Core e = core(t);
        return 1.0 + c * e.exp_alpha_one_minus_x;
    }

    // Simplified running cost along the extremal: c(1-x)[e^a(a-1) + 1].
    double rate_integrand(double t) const {
        const Core e = core(t);
        const double a = e.alpha;
        if (std::abs(a) < 1.0)
            return c * e.one_minus_x * (std::expm1(a) * (a - 1.0) + a);
        return c * (e.exp_alpha_one_minus_x * (a - 1.0) + e.one_minus_x);
    }

private:
    friend HamTrajectory make_ham_trajectory(double, double);
    friend double invert_exit_time(double, double);

    double em_ = 1.0; // exp(-alpha0), kept exactly; 1 - k0 loses it for large alpha0

    struct Core {
        double one_minus_x;
        double alpha;
        double exp_alpha_one_minus_x;
    };

    // Closed-form evaluation, grouped so that 1 - x and (1-x)e^alpha stay
    // accurate near the exit where x -> 1 and e^alpha may be huge.
    Core core(double t) const {
        if (t < 0.0) throw std::invalid_argument("HamTrajectory: t >= 0 required");
        Core out{};
        if (alpha0 == 0.0) {
            const double u = std::exp(-c * t);
            out.one_minus_x = ((1.0 + c) * u - 1.0) / c;
            out.alpha = 0.0;
            out.exp_alpha_one_minus_x = out.one_minus_x;
            return out;
        }
        if (std::abs(alpha0) < 1e-8) {
            // first order in k0 around the fluid limit (removable singularity)
            const double u = std::exp(-c * t);
            const double omu = -std::expm1(-c * t);
            const double xv = (1.0 + c) / c * omu + k0 * omu * (1.0 - omu / (2.0 * c * u));
            out.one_minus_x = 1.0 - xv;
            out.alpha = -std::log1p(-k0 * std::exp(c * t));
            out.exp_alpha_one_minus_x = out.one_minus_x * std::exp(out.alpha);
            return out;
        }
        if (alpha0 > 0.0) {
            const double lk0 = std::log1p(-em_); // log k0
            const double arg = lk0 + c * t;
            if (arg >= 0.0)
                throw std::domain_error("HamTrajectory: t beyond the singular time");
            const double u = std::exp(-c * t);
            const double delta = -std::expm1(arg); // 1 - k0 e^{ct}, to full relative accuracy
            const double L = -alpha0 - std::log(delta);
            const double B = 1.0 / em_ - L / (c * k0);
            out.one_minus_x = u * delta * B;
            out.alpha = -std::log(delta);
            out.exp_alpha_one_minus_x = u * B;
            return out;
        }
        // alpha0 < 0: k0 < 0
        const double w = std::log(-k0);
        const double u = std::exp(-c * t);
        if (w + c * t < 690.0) {
            const double g = -k0 * std::exp(c * t);
            const double L = std::log1p(-k0) - std::log1p(g);
            const double D = u - k0;
            const double B = 1.0 / (1.0 - k0) - L / (c * k0);
            out.one_minus_x = D * B;
            out.alpha = -std::log1p(g);
            out.exp_alpha_one_minus_x = D * B / (1.0 + g);
            return out;
        }
        // huge |k0| e^{ct}: regroup with r = -1/k0 to avoid overflow
        const double r = -1.0 / k0;
        const double L = std::log1p(r) - c * t - std::log1p(r * u);
        const double xv = (1.0 - u) / (1.0 - k0) - (1.0 + r * u) * L / c;
        out.one_minus_x = 1.0 - xv;
        out.alpha = -(w + c * t) - std::log1p(std::exp(-(w + c * t)));
        out.exp_alpha_one_minus_x = out.one_minus_x * std::exp(out.alpha);
        return out;
    }
};

// Builds the extremal and locates its exit time by bisection to 1e-12.
// Bracket: [0, min(1, t_s - 1e-14)] for alpha0 > 0, [0, 1] otherwise; if x(1)
// has not reached 1 for very negative alpha0 the bracket is pushed past 1 in
// 0.5 steps (bracket_extended records that this guard fired).
inline HamTrajectory make_ham_trajectory(double c, double alpha0) {
    detail::require_positive_c(c);
    if (!(std::abs(alpha0) <= 700.0))
        throw std::invalid_argument("make_ham_trajectory: |alpha0| <= 700 required");

    HamTrajectory traj;
    traj.c = c;
    traj.alpha0 = alpha0;
    traj.em_ = std::exp(-alpha0);
    traj.k0 = -std::expm1(-alpha0);
    if (alpha0 > 0.0) traj.singular_time = -std::log1p(-traj.em_) / c;

    if (alpha0 == 0.0) {
        traj.exit_time = t_star(c);
        return traj;
    }

    double lo = 0.0;
    double hi = 1.0;
    if (alpha0 > 0.0) {
        const double ts = *traj.singular_time;
        hi = std::min(1.0, ts - 1e-14);
        if (!(hi > 0.0))
            throw std::runtime_error("make_ham_trajectory: singular time too small to bracket (c=" +
                                     std::to_string(c) + ", alpha0=" + std::to_string(alpha0) + ")");
        if (traj.x(hi) < 1.0) {
            // For large alpha0 the first passage through 1 sits within
            // e^{-(alpha0 + c k0/(1-k0))} of the singular time, far inside
            // the guard band, so x never registers >= 1 at representable
            // arguments. The exit is then pinched in (hi, ts), an interval
            // already narrower than the bisection tolerance.
            const double x_hi = traj.x(hi);
            if (ts - 1e-14 <= 1.0 && std::isfinite(x_hi) && x_hi > 0.0) {
                traj.exit_time = ts - 0.5e-14;
                return traj;
            }
            std::ostringstream oss;
            oss << "make_ham_trajectory: no exit before the singular time (c=" << c
                << ", alpha0=" << alpha0 << ", x(" << hi << ")=" << x_hi << ")";
            throw std::runtime_error(oss.str());
        }
    } else {
        int extensions = 0;
        while (traj.x(hi) < 1.0) {
            hi += 0.5;
            traj.bracket_extended = true;
            if (++extensions > 64)
                throw std::runtime_error("make_ham_trajectory: exit bracket expansion failed (c=" +
                                         std::to_string(c) + ", alpha0=" + std::to_string(alpha0) + ")");
        }
    }

    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (traj.x(mid) >= 1.0) hi = mid; else lo = mid;
    }
    traj.exit_time = 0.5 * (lo + hi);
    return traj;
}

// Parametric rate F(alpha0): integral of the simplified running cost over
// [0, exit time]; identically 0 for the fluid limit alpha0 = 0.
inline RateValue rate_F(double c, double alpha0) {
    detail::require_positive_c(c);
    if (alpha0 == 0.0) return RateValue{ExtReal(0.0), 0.0};
    const HamTrajectory traj = make_ham_trajectory(c, alpha0);
    const auto q = integrate_gk15([&traj](double t) { return traj.rate_integrand(t); }, 0.0,
                                  traj.exit_time, 1e-10);
    return RateValue{ExtReal(std::max(0.0, q.value)), alpha0};
}

// Unique alpha0 whose extremal exits at the given time T, found by monotone
// bisection (the exit time is strictly decreasing in alpha0). Converges
// until |x_{alpha0}(T) - 1| <= 1e-10. alpha0 < 0 iff T > t_star(c).
inline double invert_exit_time(double c, double T) {
    detail::require_positive_c(c);
    if (!(T > 0.0 && T < 1.0)) throw std::domain_error("invert_exit_time: T must lie in (0,1)");

    auto probe = [c, T](double a0) -> double {
        if (a0 == 0.0) return fluid_z_unclipped(c, T);
        HamTrajectory curve;
        curve.c = c;
        curve.alpha0 = a0;
        curve.em_ = std::exp(-a0);
        curve.k0 = -std::expm1(-a0);
        if (a0 > 0.0) {
            const double ts = -std::log1p(-curve.em_) / c;
            if (T >= ts) return 2.0; // exited before T for sure
        }
        return curve.x(T);
    };

    double lo = -1.0, hi = 1.0;
    while (probe(hi) < 1.0) {
        hi *= 2.0;
        if (hi > 700.0) throw std::domain_error("invert_exit_time: T below the attainable exit-time range");
    }
    while (probe(lo) > 1.0) {
        lo *= 2.0;
        if (lo < -700.0) throw std::domain_error("invert_exit_time: T above the attainable exit-time range");
    }
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 300; ++i) {
        mid = 0.5 * (lo + hi);
        const double v = probe(mid);
        if (std::abs(v - 1.0) <= 1e-10) return mid;
        if (v < 1.0) lo = mid; else hi = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
    }
    if (std::abs(probe(mid) - 1.0) <= 1e-8) return mid; // interval exhausted first
    throw std::runtime_error("invert_exit_time: bisection failed to meet tolerance");
}

enum class BoundKind { sigma1, sigma2 };

// Decay rate of P(T_n/n >= t_star + eps) (upper) or P(T_n/n <= t_star - eps)
// (lower). The shifted exit time must stay inside (0, 1).
inline RateValue tail_rate(double c, double eps, TailSide side) {
    detail::require_positive_c(c);
    if (!(eps > 0.0)) throw std::invalid_argument("tail_rate: eps > 0 required");
    const double ts = t_star(c);
    double T = 0.0;
    if (side == TailSide::upper) {
        T = ts + eps;
        if (!(T < 1.0)) throw std::domain_error("tail_rate: requires t_star(c) + eps < 1");
    } else {
        T = ts - eps;
        if (!(T > 0.0)) throw std::domain_error("tail_rate: requires t_star(c) - eps > 0");
    }
    const double a0 = invert_exit_time(c, T);
    return rate_F(c, a0);
}

// Exact asymptotic maximum-independent-set proportion for c < e, via the
// Lambert function: w(c) + (c/2) w(c)^2 with w(c) = e^{-W(c)}.
inline double sigma1_star(double c) {
    if (!(c > 0.0 && c < std::exp(1.0)))
        throw std::domain_error("sigma1_star: requires 0 < c < e");
    const double w = std::exp(-lambert_w0(c));
    return w + 0.5 * c * w * w;
}

// Erdos upper bound (2/c) log c on the proportion, valid for c >= 3.
inline double sigma2_star(double c) {
    if (!(c >= 3.0)) throw std::domain_error("sigma2_star: requires c >= 3");
    return 2.0 / c * std::log(c);
}

// Rate of the event {stop time proportion >= sigma*(c)}: F at the momentum
// whose extremal exits exactly at sigma*(c).
inline RateValue bound_rate(double c, BoundKind bound) {
    const double sigma = bound == BoundKind::sigma1 ? sigma1_star(c) : sigma2_star(c);
    const double ts = t_star(c);
    if (!(sigma > ts && sigma < 1.0)) {
        std::ostringstream oss;
        oss << "bound_rate: sigma*(c)=" << sigma << " must lie in (t_star(c), 1) = (" << ts << ", 1)";
        throw std::domain_error(oss.str());
    }
    return rate_F(c, invert_exit_time(c, sigma));
}

namespace detail {

// Antiderivative of -log(1-x).
inline double neglog_integral(double x) {
    if (x >= 1.0) return 1.0;
    return (1.0 - x) * std::log1p(-x) + x;
}

// Exact integral of the running cost over one linear piece from x0 to x1 at
// speed s > 1 (time form: divide the x-integral by s). The log(1-x) part is
// integrable up to x1 = 1, so segments that finish at the boundary cost a
// finite amount.
inline double segment_cost_fast(double c, double x0, double x1, double s) {
    const double dx = x1 - x0;
    const double lin = (s - 1.0) * ((std::log((s - 1.0) / c) - 1.0) * dx +
                                    (neglog_integral(x1) - neglog_integral(x0)));
    const double quad = c * (dx - 0.5 * (x1 * x1 - x0 * x0));
    return (lin + quad) / s;
}

} // namespace detail

// Rate functional I(phi) of a piecewise-linear path, by exact per-segment
// integration of the cost branches. Rules per segment below the boundary:
// slope > 1 integrates the finite branch, slope = 1 costs c(1-x) dt, slope
// < 1 is +infinity. A segment that lands exactly on 1 with slope in (0,1)
// covers the final partial absorption step; it is charged the minimal
// admissible traversal (speed 1 in x), c(1-x0)^2/2, so densely sampled
// copies of admissible paths do not blow up to +infinity. Constant-1 tails
// cost nothing, and a path whose knots end below 1 before t = 1 stalls
// there (paths extend constant), which is +infinity. Step-interpolated
// paths are jump paths: +infinity when allowed, otherwise a domain error.
inline RateValue path_rate(double c, const ScaledPath& path, bool step_paths_as_infinite = false) {
    detail::require_positive_c(c);
    if (path.interpolation() == Interpolation::step) {
        if (step_paths_as_infinite) return RateValue{ExtReal::infinity(), std::nullopt};
        throw std::domain_error("path_rate: step paths carry infinite rate; pass the explicit flag");
    }

    const auto& ts = path.times();
    const auto& vs = path.values();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double t0 = ts[i], t1 = ts[i + 1];
        const double x0 = vs[i], x1 = vs[i + 1];
        if (t1 == t0) {
            if (x1 > x0) return RateValue{ExtReal::infinity(), std::nullopt}; // jump
            continue;
        }
        if (x0 >= 1.0) {
            if (x1 > x0) return RateValue{ExtReal::infinity(), std::nullopt};
            continue; // resting at 1 is free
        }
        if (x1 == x0) return RateValue{ExtReal::infinity(), std::nullopt}; // stalled below 1
        const double s = (x1 - x0) / (t1 - t0);
        if (s > 1.0) {
            total += detail::segment_cost_fast(c, x0, x1, s);
        } else if (s == 1.0) {
            total += c * (t1 - t0) * (1.0 - 0.5 * (x0 + x1));
        } else if (x1 == 1.0) {
            total += 0.5 * c * (1.0 - x0) * (1.0 - x0);
        } else {
            return RateValue{ExtReal::infinity(), std::nullopt};
        }
    }
    if (vs.back() < 1.0 && ts.back() < 1.0)
        return RateValue{ExtReal::infinity(), std::nullopt}; // stalls below 1 past the last knot
    return RateValue{ExtReal(total), std::nullopt};
}

} // namespace greedyldp
