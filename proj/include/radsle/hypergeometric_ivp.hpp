#pragma once

// Euler's hypergeometric initial value problem
//
//     u(1-u) phi'' - a (2u-1) phi' + c phi = 0,   phi(1/2) = 1, phi'(1/2) = 0,
//
// with a = (3 kappa - 8) / (2 kappa) and c = 8 alpha / kappa. The equation is
// written in x = u - 1/2, where it reads (1/4 - x^2) phi'' - 2 a x phi' + c phi = 0
// and is invariant under x -> -x. Both halves of the grid are integrated
// outward from the centre.
//
// Between nodes phi is evaluated from the local power series at the nearest
// node. The series coefficients follow from the equation itself, so values
// and derivatives of any order are consistent with the ODE and smooth across
// node boundaries up to the node accuracy.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "radsle/common.hpp"
#include "radsle/ode.hpp"

namespace radsle {

struct HypGridSpec {
    std::size_t n_nodes = 2049;  // odd, so that u = 1/2 is a node
    double u_min = 1e-5;         // u_max = 1 - u_min
    double atol = 1e-12;
    double rtol = 1e-12;
};

struct PhiValue {
    double phi;
    double dphi;
    double d2phi;
};

struct SignChange {
    double u;          // location on the lower half (mirror at 1 - u)
    bool beyond_grid;  // located in (0, u_min) by the endpoint expansion
};

/// Leading behaviour phi ~ limit + slope * u^{1-a} at u -> 0+, matched to the
/// outermost node. Both exponents of the regular singular point are 0 and 1-a.
struct EndpointExpansion {
    double limit;
    double slope;
    double exponent;
};

struct HypSolution {
    double kappa = 0.0;
    double alpha = 0.0;
    std::vector<double> u_grid;
    std::vector<double> phi;
    std::vector<double> dphi;
    double u_min = 0.0;
    double u_max = 1.0;
    std::optional<SignChange> sign_change;  // first nonpositive value moving out from 1/2
    double min_phi = 1.0;
    EndpointExpansion endpoint{1.0, 0.0, 1.0};

    double a_coef() const { return (3.0 * kappa - 8.0) / (2.0 * kappa); }
    double c_coef() const { return 8.0 * alpha / kappa; }
    std::size_t center() const { return u_grid.size() / 2; }

    bool in_grid(double u) const { return u >= u_min && u <= u_max; }

    /// phi and its first two derivatives at any u in [u_min, u_max].
    PhiValue evaluate(double u) const {
        if (!(u >= u_min && u <= u_max)) fail(ErrorKind::OutOfGrid, "u lies outside the solved grid");
        const auto it = std::lower_bound(u_grid.begin(), u_grid.end(), u);
        std::size_t k = static_cast<std::size_t>(it - u_grid.begin());
        if (k == u_grid.size()) k = u_grid.size() - 1;
        if (k > 0 && (u - u_grid[k - 1]) < (u_grid[k] - u)) --k;
        return series_at(k, u);
    }

    double operator()(double u) const { return evaluate(u).phi; }

    /// Taylor expansion from node k evaluated at u.
    PhiValue series_at(std::size_t k, double u) const {
        const double x0 = u_grid[k] - 0.5;
        const double t = u - u_grid[k];
        const double a = a_coef();
        const double c = c_coef();
        const double p0 = 0.25 - x0 * x0;
        const double p1 = -2.0 * x0;
        const double q0 = -2.0 * a * x0;
        double cn = phi[k];    // c_n
        double cn1 = dphi[k];  // c_{n+1}
        double value = cn + cn1 * t;
        double d1 = cn1;
        double d2 = 0.0;
        double tn = 1.0;  // t^n
        int quiet = 0;
        for (int n = 0; n < 200; ++n) {
            const double dn = n;
            const double cn2 = -(p1 * (dn + 1.0) * dn * cn1 - dn * (dn - 1.0) * cn + q0 * (dn + 1.0) * cn1 -
                                 2.0 * a * dn * cn + c * cn) /
                               (p0 * (dn + 2.0) * (dn + 1.0));
            const double t0 = cn2 * tn * t * t;
            const double t1 = (dn + 2.0) * cn2 * tn * t;
            const double t2 = (dn + 2.0) * (dn + 1.0) * cn2 * tn;
            value += t0;
            d1 += t1;
            d2 += t2;
            const bool small = std::fabs(t0) <= 1e-17 * std::fabs(value) && std::fabs(t1) <= 1e-17 * std::fabs(d1) &&
                               std::fabs(t2) <= 1e-17 * std::fabs(d2);
            quiet = small ? quiet + 1 : 0;
            if (quiet >= 3) break;
            cn = cn1;
            cn1 = cn2;
            tn *= t;
        }
        return {value, d1, d2};
    }
};

/// Solves the initial value problem on a Chebyshev-like grid symmetric about 1/2.
inline HypSolution solve_phi_alpha(double kappa, double alpha, const HypGridSpec& grid = {}) {
    require(kappa > 0.0 && kappa < 8.0, "solve_phi_alpha needs kappa in (0, 8)");
    require(std::isfinite(alpha), "alpha must be finite");
    require(grid.n_nodes >= 3 && grid.n_nodes % 2 == 1, "grid needs an odd node count >= 3");
    require(grid.u_min > 0.0 && grid.u_min < 0.5, "u_min must lie in (0, 1/2)");

    HypSolution sol;
    sol.kappa = kappa;
    sol.alpha = alpha;
    sol.u_min = grid.u_min;
    sol.u_max = 1.0 - grid.u_min;
    const std::size_t n = grid.n_nodes;
    const std::size_t half = n / 2;
    sol.u_grid.assign(n, 0.5);
    sol.phi.assign(n, 1.0);
    sol.dphi.assign(n, 0.0);

    const double a = sol.a_coef();
    const double c = sol.c_coef();
    auto rhs = [a, c](double x, const OdeState<2>& y) -> OdeState<2> {
        return {y[1], (2.0 * a * x * y[1] - c * y[0]) / (0.25 - x * x)};
    };
    OdeTolerances tol;
    tol.atol = grid.atol;
    tol.rtol = grid.rtol;

    // Offsets from the centre, increasing with j.
    std::vector<double> delta(half + 1, 0.0);
    const double reach = 0.5 - grid.u_min;
    for (std::size_t j = 1; j <= half; ++j) {
        delta[j] = j == half ? reach : reach * std::sin(0.5 * pi * static_cast<double>(j) / static_cast<double>(half));
    }
    for (int side : {-1, 1}) {
        OdeState<2> y = {1.0, 0.0};
        double x = 0.0;
        double h = 1e-3 * side;
        for (std::size_t j = 1; j <= half; ++j) {
            const double xj = side * delta[j];
            y = dopri5<2>(rhs, x, y, xj, h, tol);
            x = xj;
            const std::size_t k = side < 0 ? half - j : half + j;
            sol.u_grid[k] = 0.5 + xj;
            sol.phi[k] = y[0];
            sol.dphi[k] = y[1];
        }
    }
    sol.u_grid.front() = sol.u_min;
    sol.u_grid.back() = sol.u_max;

    for (double v : sol.phi) sol.min_phi = std::min(sol.min_phi, v);
    for (std::size_t j = 1; j <= half; ++j) {
        const std::size_t k = half - j;
        if (sol.phi[k] <= 0.0) {
            const double f0 = sol.phi[k + 1];
            const double f1 = sol.phi[k];
            const double w = f0 / (f0 - f1);
            sol.sign_change = SignChange{sol.u_grid[k + 1] + w * (sol.u_grid[k] - sol.u_grid[k + 1]), false};
            break;
        }
    }

    const double expo = 1.0 - a;
    const double u0 = sol.u_grid.front();
    const double slope = sol.dphi.front() * std::pow(u0, a) / expo;
    sol.endpoint = {sol.phi.front() - slope * std::pow(u0, expo), slope, expo};
    if (!sol.sign_change && sol.endpoint.limit <= 0.0 && sol.phi.front() > 0.0 && slope > 0.0) {
        const double root = std::pow(-sol.endpoint.limit / slope, 1.0 / expo);
        sol.sign_change = SignChange{std::min(root, u0), true};
    }
    return sol;
}

} // namespace radsle
