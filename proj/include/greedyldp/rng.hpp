#pragma once

#include <cmath>
#include <cstdint>

namespace greedyldp {

// Splittable counter-based seed derivation (SplitMix64 finalizer over
// master + stream index). Replica i of a Monte Carlo run draws stream i and
// gets a reproducible, order-independent substream.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t z = master_seed + (stream_index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna), state expanded from a 64-bit seed with
// SplitMix64. Small, fast, and identical output on every platform, which the
// CLI's byte-identical-output guarantee relies on.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : state_) {
            sm += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on (0, 1]; never returns 0 so log(u) is always finite.
    double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, bound), bound >= 1 (Lemire's method).
    std::uint64_t uniform_below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

// Exact Binomial(m, p) sample. Inversion by CDF walk for small m*p; for
// large m*p, successes are counted by geometric gap skipping, which is exact
// for any p and costs O(m*p) expected iterations. p > 1/2 is reflected so
// the start probability (1-p)^m cannot underflow in the inversion path.
inline long sample_binomial(Xoshiro256pp& rng, long m, double p) {
    if (m <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return m;
    if (p > 0.5) return m - sample_binomial(rng, m, 1.0 - p);

    const double mean = static_cast<double>(m) * p;
    if (mean <= 30.0) {
        const double ratio = p / (1.0 - p);
        double u = rng.uniform_pos();
        double pmf = std::exp(static_cast<double>(m) * std::log1p(-p));
        long j = 0;
        while (u > pmf && j < m) {
            u -= pmf;
            pmf *= ratio * static_cast<double>(m - j) / static_cast<double>(j + 1);
            ++j;
        }
        return j;
    }

    const double lq = std::log1p(-p);
    long count = 0;
    long pos = 0;
    for (;;) {
        const double gap = std::floor(std::log(rng.uniform_pos()) / lq);
        if (gap > static_cast<double>(m)) break; // cannot land inside the remaining trials
        pos += static_cast<long>(gap) + 1;
        if (pos > m) break;
        ++count;
    }
    return count;
}

} // namespace greedyldp
