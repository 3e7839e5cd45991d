#pragma once

#include <algorithm>
#include <stdexcept>

namespace hypconst {

// Closed interval [lo, hi]; the carrier for rigorous distance bounds.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    explicit Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {
        if (l > h) throw std::invalid_argument("Interval: lo > hi");
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

inline Interval operator+(Interval a, Interval b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

}  // namespace hypconst
