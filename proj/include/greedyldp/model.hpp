#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "greedyldp/ext_real.hpp"
#include "greedyldp/rng.hpp"

namespace greedyldp {

// Mean-degree parameter c of the random graph G(n, c/n), optionally paired
// with the vertex count n. Asymptotic quantities take c alone.
struct ModelParams {
    double c;
    std::optional<long> n;

    explicit ModelParams(double c_, std::optional<long> n_ = std::nullopt) : c(c_), n(n_) {
        if (!(c > 0.0)) throw std::invalid_argument("ModelParams: c must be > 0");
        if (n) {
            if (*n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
            if (c > static_cast<double>(*n))
                throw std::invalid_argument("ModelParams: c <= n required (edge probability c/n <= 1)");
        }
    }

    long require_n() const {
        if (!n) throw std::invalid_argument("ModelParams: operation requires n");
        return *n;
    }
    double edge_probability() const { return c / static_cast<double>(require_n()); }
};

enum class Interpolation { step, linear };

enum class TailSide { upper, lower };

// A nondecreasing path t -> value on [0,1] with value(0) = 0, either step
// (cadlag, holds the last knot) or piecewise linear between knots. Beyond the
// last knot the path is constant.
class ScaledPath {
public:
    ScaledPath(std::vector<double> times, std::vector<double> values, Interpolation interp)
        : times_(std::move(times)), values_(std::move(values)), interp_(interp) {
        if (times_.empty() || times_.size() != values_.size())
            throw std::invalid_argument("ScaledPath: times/values must be non-empty and equal length");
        if (times_.front() != 0.0) throw std::invalid_argument("ScaledPath: grid must start at t=0");
        if (values_.front() != 0.0) throw std::invalid_argument("ScaledPath: value at t=0 must be 0");
        for (std::size_t i = 0; i < times_.size(); ++i) {
            if (!(times_[i] >= 0.0 && times_[i] <= 1.0))
                throw std::invalid_argument("ScaledPath: times must lie in [0,1]");
            if (!(values_[i] >= 0.0 && values_[i] <= 1.0))
                throw std::invalid_argument("ScaledPath: values must lie in [0,1]");
            if (i > 0) {
                if (times_[i] < times_[i - 1])
                    throw std::invalid_argument("ScaledPath: times must be nondecreasing");
                if (values_[i] < values_[i - 1])
                    throw std::invalid_argument("ScaledPath: values must be nondecreasing");
            }
        }
    }

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }
    Interpolation interpolation() const { return interp_; }
    std::size_t size() const { return times_.size(); }

    double value_at(double t) const {
        if (t <= times_.front()) return values_.front();
        if (t >= times_.back()) return values_.back();
        // last knot index with times_[i] <= t
        std::size_t lo = 0, hi = times_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (times_[mid] <= t) lo = mid; else hi = mid;
        }
        if (interp_ == Interpolation::step) return values_[lo];
        const double dt = times_[hi] - times_[lo];
        if (dt == 0.0) return values_[hi];
        const double w = (t - times_[lo]) / dt;
        return values_[lo] + w * (values_[hi] - values_[lo]);
    }

private:
    std::vector<double> times_;
    std::vector<double> values_;
    Interpolation interp_;
};

} // namespace greedyldp
