#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "greedyldp/csv.hpp"
#include "greedyldp/model.hpp"
#include "greedyldp/rng.hpp"

namespace greedyldp {

// The one-dimensional chain Z_0 = 0, Z_{k+1} = Z_k + 1 + Binomial(n-Z_k-1, c/n),
// absorbed at n after stop_time steps.
struct ChainTrajectory {
    long n = 0;
    std::vector<long> z;
    long stop_time = 0;
};

// Exact distribution of the stop time over k = 1..n. pmf entries below the
// double underflow floor are kept in log_pmf, which is why the two arrays
// coexist. Index 0 is unused.
struct StopTimeDist {
    long n = 0;
    std::vector<double> pmf;     // size n+1, pmf[0] = 0
    std::vector<double> log_pmf; // size n+1, log_pmf[0] = -inf
};

inline ChainTrajectory simulate_chain(const ModelParams& params, std::uint64_t seed) {
    const long n = params.require_n();
    const double p = params.edge_probability();
    Xoshiro256pp rng(seed);
    ChainTrajectory traj;
    traj.n = n;
    traj.z.push_back(0);
    long z = 0;
    while (z < n) {
        z += 1 + sample_binomial(rng, n - z - 1, p);
        traj.z.push_back(z);
    }
    traj.stop_time = static_cast<long>(traj.z.size()) - 1;
    return traj;
}

// Step path t -> Z_{floor(n t)} / n on [0,1]; constantly 1 after the stop time.
inline ScaledPath scaled_path(const ChainTrajectory& traj) {
    const double n = static_cast<double>(traj.n);
    std::vector<double> times, values;
    times.reserve(traj.z.size());
    values.reserve(traj.z.size());
    for (std::size_t k = 0; k < traj.z.size(); ++k) {
        times.push_back(static_cast<double>(k) / n);
        values.push_back(static_cast<double>(traj.z[k]) / n);
    }
    return ScaledPath(std::move(times), std::move(values), Interpolation::step);
}

namespace detail {

inline double log_sum_exp(const std::vector<double>& logs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : logs) mx = std::max(mx, v);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double v : logs) s += std::exp(v - mx);
    return mx + std::log(s);
}

} // namespace detail

// Forward dynamic program over the occupation probabilities of the
// unabsorbed states. The slice lives in linear space with one running
// log-scale factor (rescaled whenever its maximum drops below 1e-300);
// inflow into the absorbing state n is accumulated separately in log space,
// so stop-time masses far below the double range keep exact logarithms.
// Binomial transition rows are expanded from the mode by the term
// recurrence and truncated at 1e-30 of the mode term; the absorbing term
// (all remaining vertices blocked at once) is always added exactly via
// log-gamma, since it can be many orders below the truncation floor.
inline StopTimeDist exact_stop_time_distribution(const ModelParams& params, long cap = 2000) {
    const long n = params.require_n();
    if (n > cap)
        throw std::length_error("exact_stop_time_distribution: n exceeds the DP size cap (" +
                                std::to_string(cap) + ")");
    const double p = params.edge_probability();
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    const double ratio_up = p / (1.0 - p);

    StopTimeDist dist;
    dist.n = n;
    dist.pmf.assign(static_cast<std::size_t>(n) + 1, 0.0);
    dist.log_pmf.assign(static_cast<std::size_t>(n) + 1, -std::numeric_limits<double>::infinity());

    std::vector<double> slice(static_cast<std::size_t>(n), 0.0); // states z = 0..n-1
    slice[0] = 1.0;
    double log_scale = 0.0;
    std::vector<double> next(static_cast<std::size_t>(n), 0.0);
    std::vector<double> absorb_logs;

    for (long k = 1; k <= n; ++k) {
        std::fill(next.begin(), next.end(), 0.0);
        absorb_logs.clear();
        bool any = false;
        for (long z = k - 1; z < n; ++z) {
            const double wz = slice[static_cast<std::size_t>(z)];
            if (wz <= 0.0) continue;
            any = true;
            const long m = n - z - 1;
            // absorbing jump z -> n needs all m remaining trials to succeed
            absorb_logs.push_back(std::log(wz) + log_scale + static_cast<double>(m) * log_p);
            if (m == 0 || p >= 1.0) continue;

            // non-absorbing targets z' = z+1+j, j = 0..m-1, mode-outward
            long jm = std::min<long>(static_cast<long>((static_cast<double>(m) + 1.0) * p), m - 1);
            const double log_mode = std::lgamma(static_cast<double>(m) + 1.0) -
                                    std::lgamma(static_cast<double>(jm) + 1.0) -
                                    std::lgamma(static_cast<double>(m - jm) + 1.0) +
                                    static_cast<double>(jm) * log_p + static_cast<double>(m - jm) * log_q;
            const double mode_term = std::exp(log_mode);
            const double floor = 1e-30 * mode_term;
            double term = mode_term;
            for (long j = jm;;) {
                next[static_cast<std::size_t>(z + 1 + j)] += wz * term;
                ++j;
                if (j > m - 1) break;
                term *= ratio_up * static_cast<double>(m - j + 1) / static_cast<double>(j);
                if (term < floor && j > jm) break;
            }
            term = mode_term;
            for (long j = jm; j > 0;) {
                term *= static_cast<double>(j) / (ratio_up * static_cast<double>(m - j + 1));
                --j;
                if (term < floor) break;
                next[static_cast<std::size_t>(z + 1 + j)] += wz * term;
            }
        }
        if (!any) break;

        const double lp = detail::log_sum_exp(absorb_logs);
        dist.log_pmf[static_cast<std::size_t>(k)] = lp;
        dist.pmf[static_cast<std::size_t>(k)] = std::exp(lp);

        double mx = 0.0;
        for (long z = k; z < n; ++z) mx = std::max(mx, next[static_cast<std::size_t>(z)]);
        if (mx == 0.0) break;
        if (mx < 1e-300) {
            for (long z = k; z < n; ++z) next[static_cast<std::size_t>(z)] /= mx;
            log_scale += std::log(mx);
        }
        slice.swap(next);
    }
    return dist;
}

// log P(T/n >= threshold) (upper) or log P(T/n <= threshold) (lower),
// assembled by log-sum-exp over log_pmf. "T/n >= theta" means k >= ceil(n
// theta), with a snap-to-integer guard when n*theta is integral up to 1e-9.
// An empty tail returns -infinity.
inline double tail_log_prob(const StopTimeDist& dist, double threshold, TailSide side) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("tail_log_prob: threshold must lie in (0,1)");
    const double x = static_cast<double>(dist.n) * threshold;
    const double r = std::round(x);
    long k_lo = 1, k_hi = dist.n;
    if (side == TailSide::upper) {
        k_lo = (std::abs(x - r) <= 1e-9) ? static_cast<long>(r) : static_cast<long>(std::ceil(x));
        k_lo = std::max<long>(k_lo, 1);
    } else {
        k_hi = (std::abs(x - r) <= 1e-9) ? static_cast<long>(r) : static_cast<long>(std::floor(x));
        k_hi = std::min<long>(k_hi, dist.n);
    }
    if (k_lo > k_hi) return -std::numeric_limits<double>::infinity();
    std::vector<double> logs(dist.log_pmf.begin() + k_lo, dist.log_pmf.begin() + k_hi + 1);
    const double s = detail::log_sum_exp(logs);
    return s > 0.0 ? 0.0 : s; // clip fp noise above log(1)
}

// CSV export: header "k,pmf,log_pmf", one row per k, 17 significant digits.
inline void write_stop_time_csv(std::ostream& os, const StopTimeDist& dist) {
    os << "k,pmf,log_pmf\n";
    for (long k = 1; k <= dist.n; ++k)
        os << k << ',' << format17(dist.pmf[static_cast<std::size_t>(k)]) << ','
           << format17(dist.log_pmf[static_cast<std::size_t>(k)]) << '\n';
}

} // namespace greedyldp
