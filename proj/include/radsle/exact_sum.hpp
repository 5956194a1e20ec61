#pragma once

#include <cmath>
#include <vector>

namespace radsle {

/// Exactly rounded floating-point summation (Shewchuk non-overlapping
/// partials, as in Python's math.fsum). The value is the sum of all added
/// terms rounded once, independent of insertion order.
class ExactSum {
public:
    void add(double x) {
        std::size_t i = 0;
        for (double y : partials_) {
            if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials_[i++] = lo;
            x = hi;
        }
        partials_.resize(i);
        partials_.push_back(x);
    }

    void add(const ExactSum& other) {
        for (double p : other.partials_) add(p);
    }

    double value() const {
        if (partials_.empty()) return 0.0;
        auto n = partials_.size();
        double hi = partials_[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials_[--n];
            hi = x + y;
            const double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) break;
        }
        // Half-way correction so the result is correctly rounded.
        if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            if (y == x - hi) hi = x;
        }
        return hi;
    }

private:
    std::vector<double> partials_;
};

} // namespace radsle
