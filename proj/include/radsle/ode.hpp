#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <initializer_list>
#include <utility>

#include "radsle/common.hpp"

namespace radsle {

struct OdeTolerances {
    double atol = 1e-12;
    double rtol = 1e-12;
    double min_step = 1e-15;  // relative to the span |x1 - x0|
    long max_steps = 1000000;
};

template <std::size_t N>
using OdeState = std::array<double, N>;

/// Integrates y' = f(x, y) from x0 to x1 (either direction) and returns
/// y(x1). `h` carries the step size suggestion in and out so repeated calls
/// along a grid reuse the controller state.
template <std::size_t N, class F>
OdeState<N> dopri5(F&& f, double x0, OdeState<N> y, double x1, double& h, const OdeTolerances& tol = {}) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = x1 - x0;
    if (span == 0.0) return y;
    const double dir = span > 0.0 ? 1.0 : -1.0;
    const double h_min = tol.min_step * std::fabs(span);
    double step = std::fabs(h);
    if (!(step > 0.0)) step = 1e-3 * std::fabs(span);

    auto axpy = [](const OdeState<N>& base, std::initializer_list<std::pair<double, const OdeState<N>*>> terms,
                   double hh) {
        OdeState<N> out = base;
        for (const auto& [c, k] : terms)
            for (std::size_t i = 0; i < N; ++i) out[i] += hh * c * (*k)[i];
        return out;
    };

    double x = x0;
    OdeState<N> k1 = f(x, y);
    for (long count = 0; count < tol.max_steps; ++count) {
        const double remaining = std::fabs(x1 - x);
        const double planned = step;
        bool last = false;
        if (step >= remaining) {
            step = remaining;
            last = true;
        }
        const double hh = dir * step;
        const OdeState<N> k2 = f(x + c2 * hh, axpy(y, {{a21, &k1}}, hh));
        const OdeState<N> k3 = f(x + c3 * hh, axpy(y, {{a31, &k1}, {a32, &k2}}, hh));
        const OdeState<N> k4 = f(x + c4 * hh, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, hh));
        const OdeState<N> k5 = f(x + c5 * hh, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, hh));
        const OdeState<N> k6 =
            f(x + hh, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, hh));
        const OdeState<N> y_new = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, hh);
        const double x_new = last ? x1 : x + hh;
        const OdeState<N> k7 = f(x_new, y_new);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = tol.atol + tol.rtol * std::max(std::fabs(y[i]), std::fabs(y_new[i]));
            const double r = std::fabs(e) / scale;
            // std::max would drop a NaN ratio, so non-finite stages are caught here
            if (!std::isfinite(r) || !std::isfinite(y_new[i])) {
                err = 1e10;
                break;
            }
            err = std::max(err, r);
        }

        if (err <= 1.0) {
            x = x_new;
            y = y_new;
            k1 = k7;
            const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (last) {
                h = dir * std::max({planned, step * grow, h_min});
                return y;
            }
            step *= grow;
        } else {
            step *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            if (step < h_min) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "step size underflow at x = %.17g while integrating to %.17g", x, x1);
                fail(ErrorKind::StiffnessFailure, buf);
            }
        }
    }
    fail(ErrorKind::StiffnessFailure, "step budget exhausted");
}

} // namespace radsle
