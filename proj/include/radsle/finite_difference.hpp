#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "radsle/common.hpp"

namespace radsle::fd {

/// Fourth-order central first derivative.
template <class F>
double d1(F&& f, double x, double h) {
    return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

/// Fourth-order central second derivative.
template <class F>
double d2(F&& f, double x, double h) {
    return (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h * h);
}

/// Combines estimates at steps h and h/2 for a method of the given order.
inline double richardson(double coarse, double fine, double order) {
    const double r = std::pow(2.0, order);
    return (r * fine - coarse) / (r - 1.0);
}

/// log2 of the error ratio between consecutive halvings.
inline double observed_order(double err_coarse, double err_fine) {
    if (err_fine == 0.0) return err_coarse == 0.0 ? 0.0 : INFINITY;
    return std::log2(std::fabs(err_coarse) / std::fabs(err_fine));
}

/// Weights of the derivatives of order 0..m at x0 from values on arbitrary
/// distinct nodes (Fornberg's recursion). Returns w[k][j] for derivative k
/// and node j.
inline std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, std::size_t m) {
    const std::size_t n = nodes.size();
    require(n > m, "need more nodes than the derivative order");
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k)
                    c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

} // namespace radsle::fd
