#pragma once

// kappa = 0 flows, run through the same steppers as the random case with the
// noise switched off, and diagnostics of kappa log Z as kappa -> 0.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "radsle/common.hpp"
#include "radsle/conformal_core.hpp"
#include "radsle/partition.hpp"
#include "radsle/samplers.hpp"

namespace radsle {

struct ZeroFlowState {
    double xi = 0.0;
    double v = 0.0;
    double t = 0.0;
};

/// Radial SLE_0^mu(2) from th1 with force point th2.
inline CurveTrace trace_zero_radial(double mu, double th1, double th2, double T, double dt = 1e-3,
                                    std::size_t n_points = 401) {
    require(std::fabs(std::sin(0.5 * (th2 - th1))) >= tol_gap, "th1 and th2 must differ mod 2pi");
    return trace_radial_sle(SleParams(0.0, mu, 2.0), th1, th2, T, dt, n_points, RngSpec{});
}

/// Final state of the kappa = 0 driver system after time T.
inline ZeroFlowState zero_flow(double mu, double th1, double th2, double T, double dt = 1e-3) {
    const auto s = sample_radial_sle(SleParams(0.0, mu, 2.0), th1, th2, T, dt, 1, RngSpec{});
    return {s.driver.xi.back(), s.driver.v.back(), s.driver.times.back()};
}

/// Deterministic two-sided pair (kappa = 0).
inline std::pair<CurveTrace, CurveTrace> trace_zero_pair(double mu, double th1, double th2, double total_cap,
                                                         double eps_step) {
    PairSample s = sample_two_sided_pair(0.0, mu, th1, th2, total_cap, eps_step, RngSpec{});
    return {std::move(s.curve1), std::move(s.curve2)};
}

/// 2 log sin(th21/2) + mu (th1 + th2).
inline double u_mu(double mu, double th1, double th2) {
    if (!ordered_pair(th1, th2)) fail(ErrorKind::Domain, "u_mu needs th1 < th2 < th1 + 2pi");
    return 2.0 * std::log(std::sin(0.5 * (th2 - th1))) + mu * (th1 + th2);
}

/// -6 log sin(th21/2).
inline double u_chordal(double th1, double th2) {
    if (!ordered_pair(th1, th2)) fail(ErrorKind::Domain, "u_chordal needs th1 < th2 < th1 + 2pi");
    return -6.0 * std::log(std::sin(0.5 * (th2 - th1)));
}

/// Total change of arg along the trace, unwrapped between samples.
inline double winding_angle(const CurveTrace& trace) {
    double total = 0.0;
    for (std::size_t k = 1; k < trace.size(); ++k) total += std::arg(trace.points[k] / trace.points[k - 1]);
    return total;
}

struct TrendRow {
    double kappa = 0.0;
    double value = 0.0;  // kappa log Z_alpha(0, theta)
    double error = 0.0;  // |value - (-6 log sin(theta/2))|
};

struct TrendTable {
    double alpha = 0.0;
    double theta = 0.0;
    std::vector<TrendRow> rows;
    bool non_increasing = true;
    bool strictly_decreasing = true;
};

inline TrendTable semiclassical_Z_trend(double alpha, const std::vector<double>& kappas, double theta,
                                        const HypGridSpec& grid = {}) {
    require(theta > 0.0 && theta < two_pi, "theta must lie in (0, 2pi)");
    require(!kappas.empty(), "need at least one kappa");
    TrendTable table;
    table.alpha = alpha;
    table.theta = theta;
    const double target = u_chordal(0.0, theta);
    for (std::size_t k = 0; k < kappas.size(); ++k) {
        const double kappa = kappas[k];
        if (k > 0) require(kappa < kappas[k - 1], "kappas must be strictly descending");
        const PartitionFn pf = PartitionFn::cr_weighted(kappa, alpha, grid);
        TrendRow row;
        row.kappa = kappa;
        row.value = kappa * log_Z(pf, 0.0, theta);
        row.error = std::fabs(row.value - target);
        if (k > 0) {
            const double prev = table.rows.back().error;
            if (row.error > prev) table.non_increasing = false;
            if (!(row.error < prev)) table.strictly_decreasing = false;
        }
        table.rows.push_back(row);
    }
    return table;
}

} // namespace radsle
