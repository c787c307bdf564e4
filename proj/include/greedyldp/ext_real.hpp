#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace greedyldp {

// Extended real value: either a finite double or +infinity. The +infinity
// state is an explicit tag, never an IEEE infinity produced by overflow, so
// "infinite" is always a deliberate semantic answer (e.g. an inadmissible
// path has infinite cost).
class ExtReal {
public:
    ExtReal() : value_(0.0), infinite_(false) {}
    ExtReal(double v) : value_(v), infinite_(false) {
        if (!std::isfinite(v)) throw std::invalid_argument("ExtReal: finite value required");
    }

    static ExtReal infinity() {
        ExtReal r;
        r.infinite_ = true;
        r.value_ = std::numeric_limits<double>::infinity();
        return r;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    // Finite value; throws when infinite.
    double value() const {
        if (infinite_) throw std::logic_error("ExtReal: value() on +infinity");
        return value_;
    }

    // Finite value, or IEEE +inf for the infinite tag (for printing/comparing).
    double value_or_inf() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
        return a.value_ == b.value_;
    }
    friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
        return a.value_or_inf() <=> b.value_or_inf();
    }

    friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return ExtReal(a.value_ + b.value_);
    }
    ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }

    friend std::ostream& operator<<(std::ostream& os, const ExtReal& r) {
        if (r.infinite_) return os << "inf";
        return os << r.value_;
    }

private:
    double value_;
    bool infinite_;
};

} // namespace greedyldp
