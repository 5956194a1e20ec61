#pragma once

// Driving processes: radial SLE_kappa^mu drivers, the SLE_kappa^mu(rho)
// system with a tracked force point, and the absorbed gap diffusion.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "radsle/common.hpp"
#include "radsle/conformal_core.hpp"
#include "radsle/rng.hpp"

namespace radsle {

struct SleParams {
    double kappa = 0.0;
    double mu = 0.0;
    double rho = 0.0;

    SleParams() = default;
    SleParams(double kappa_, double mu_ = 0.0, double rho_ = 0.0) : kappa(kappa_), mu(mu_), rho(rho_) {
        require(std::isfinite(kappa) && kappa >= 0.0, "kappa must be finite and >= 0");
        require(std::isfinite(mu) && std::isfinite(rho), "mu and rho must be finite");
    }

    /// (6 - kappa) / (2 kappa); needs kappa > 0.
    double h() const {
        require(kappa > 0.0, "h needs kappa > 0");
        return (6.0 - kappa) / (2.0 * kappa);
    }

    /// (6 - kappa)(kappa - 2) / (8 kappa); needs kappa > 0.
    double h_tilde() const {
        require(kappa > 0.0, "h_tilde needs kappa > 0");
        return (6.0 - kappa) * (kappa - 2.0) / (8.0 * kappa);
    }
};

struct DrivingPath {
    std::vector<double> times;
    std::vector<double> xi;
    std::vector<double> v;  // empty when no force point is tracked

    bool has_v() const noexcept { return !v.empty(); }
    std::size_t size() const noexcept { return times.size(); }
};

namespace detail {

// Uniform grid on [0, T] with spacing dt; the last interval may be shorter.
inline std::vector<double> time_grid(double T, double dt) {
    require(T >= 0.0 && std::isfinite(T), "T must be finite and >= 0");
    require(dt > 0.0 && std::isfinite(dt), "dt must be positive");
    std::vector<double> t{0.0};
    if (T == 0.0) return t;
    const auto n = static_cast<std::size_t>(std::ceil(T / dt * (1.0 - 1e-12)));
    t.reserve(n + 1);
    for (std::size_t k = 1; k < n; ++k) t.push_back(static_cast<double>(k) * dt);
    t.push_back(T);
    return t;
}

} // namespace detail

/// xi_t = theta0 + sqrt(kappa) B_t + mu t sampled on the grid.
inline DrivingPath sample_radial_driver(const SleParams& p, double theta0, double T, double dt, RngSpec rng) {
    require(T > 0.0, "sample_radial_driver needs T > 0");
    DrivingPath path;
    path.times = detail::time_grid(T, dt);
    path.xi.reserve(path.times.size());
    RandomStream stream(rng);
    const double sk = std::sqrt(p.kappa);
    double xi = theta0;
    path.xi.push_back(xi);
    for (std::size_t k = 1; k < path.times.size(); ++k) {
        const double h = path.times[k] - path.times[k - 1];
        const double z = stream.normal();
        xi += sk * std::sqrt(h) * z + p.mu * h;
        path.xi.push_back(xi);
    }
    return path;
}

/// Chain of a driver sampled on a grid, with xi held at the right endpoint of
/// each interval.
inline LoewnerChain chain_from_path(const DrivingPath& path) {
    LoewnerChain chain;
    for (std::size_t k = 1; k < path.size(); ++k) chain.append(path.times[k] - path.times[k - 1], path.xi[k]);
    return chain;
}

/// Integrator for the system
///   d xi = sqrt(kappa) dB + (rho/2) cot((xi - V)/2) dt + mu dt,
///   d V  = cot((V - xi)/2) dt,
/// with V - xi kept in (0, 2pi) on continuous branches.
///
/// Each sub-step moves xi by Euler-Maruyama, appends the step to the chain
/// (when one is attached) and then flows V exactly through that Loewner step,
/// so V stays the image of the force point under the discrete chain.
class KappaRhoStepper {
public:
    struct Options {
        double drift_fraction = 0.1;  // |gap drift| h <= fraction * gap
        double noise_fraction = 0.25;  // sqrt(kappa h) <= fraction * gap
        int max_halvings = 40;
        std::uint64_t max_substeps = 50'000'000;
    };

    KappaRhoStepper(const SleParams& p, double xi0, double v0, RngSpec rng, LoewnerChain* chain = nullptr)
        : KappaRhoStepper(p, xi0, v0, rng, chain, Options{}) {}

    KappaRhoStepper(const SleParams& p, double xi0, double v0, RngSpec rng, LoewnerChain* chain, Options opt)
        : p_(p), xi_(xi0), v_(v0), stream_(rng), chain_(chain), opt_(opt) {
        restart(xi0, v0);
    }

    /// Moves the driver and force point to new angles, keeping the random
    /// stream position. The force point is placed on the branch with
    /// xi < v < xi + 2pi; v_offset() reports the shift applied to v0.
    void restart(double xi0, double v0) {
        require(std::isfinite(xi0) && std::isfinite(v0), "angles must be finite");
        const double gap = wrap_two_pi(v0 - xi0);
        if (!(gap > tol_gap && gap < two_pi - tol_gap))
            fail(ErrorKind::Domain, "driver and force point must be distinct mod 2pi");
        xi_ = xi0;
        v_ = xi0 + gap;
        v_offset_ = two_pi * std::round((v_ - v0) / two_pi);
    }

    void attach(LoewnerChain* chain) noexcept { chain_ = chain; }
    double v_offset() const noexcept { return v_offset_; }

    double xi() const noexcept { return xi_; }
    double v() const noexcept { return v_; }
    double gap() const noexcept { return v_ - xi_; }
    std::uint64_t substeps() const noexcept { return substeps_; }

    /// Advances by capacity dt, sub-stepping adaptively.
    void advance(double dt) {
        double remaining = dt;
        while (remaining > 0.0) {
            double h = std::min(remaining, max_substep());
            if (remaining - h < 1e-12 * dt) h = remaining;
            const double db = std::sqrt(h) * stream_.normal();
            substep(h, db, 0);
            remaining -= h;
        }
    }

private:
    double max_substep() const {
        const double g = gap();
        const double g_min = std::min(g, two_pi - g);
        const double c = std::fabs(cot(0.5 * g));
        const double drift = (1.0 + 0.5 * std::fabs(p_.rho)) * c + std::fabs(p_.mu);
        double h = std::numeric_limits<double>::infinity();
        if (drift > 0.0) h = opt_.drift_fraction * g_min / drift;
        if (p_.kappa > 0.0) {
            const double s = opt_.noise_fraction * g_min;
            h = std::min(h, s * s / p_.kappa);
        }
        return h;
    }

    void substep(double h, double db, int depth) {
        if (++substeps_ > opt_.max_substeps) fail(ErrorKind::PathAbort, "sub-step budget exhausted");
        const double drift = 0.5 * p_.rho * cot(0.5 * (xi_ - v_)) + p_.mu;
        const double xi_new = xi_ + drift * h + std::sqrt(p_.kappa) * db;
        const double raw_gap = v_ - xi_new;
        const bool ok = raw_gap > tol_gap && raw_gap < two_pi - tol_gap &&
                        std::fabs(std::sin(0.5 * raw_gap)) >= tol_gap;
        if (!ok) {
            if (depth >= opt_.max_halvings)
                fail(ErrorKind::GapCollapse, "gap left (tol, 2pi - tol) after the maximum number of halvings");
            // Brownian bridge split of the increment over two half steps.
            const double db1 = 0.5 * db + 0.5 * std::sqrt(h) * stream_.normal();
            substep(0.5 * h, db1, depth + 1);
            substep(0.5 * h, db - db1, depth + 1);
            return;
        }
        xi_ = xi_new;
        if (chain_ != nullptr) chain_->append(h, xi_);
        v_ = boundary_flow_step(v_, xi_, h);
        if (!(v_ - xi_ > 0.0 && v_ - xi_ < two_pi))
            fail(ErrorKind::GapCollapse, "force point flow left the gap interval");
    }

    SleParams p_;
    double xi_;
    double v_;
    RandomStream stream_;
    LoewnerChain* chain_;
    Options opt_;
    double v_offset_ = 0.0;
    std::uint64_t substeps_ = 0;
};

/// Euler-Maruyama path of radial SLE_kappa^mu(rho) started at (theta1, theta2)
/// with theta2 the force point. The optional chain receives every sub-step.
inline DrivingPath sample_kappa_mu_rho_driver(const SleParams& p, double theta1, double theta2, double T, double dt,
                                              RngSpec rng, LoewnerChain* chain = nullptr) {
    require(p.kappa < 8.0, "sample_kappa_mu_rho_driver needs kappa in [0, 8)");
    require(p.rho > -2.0, "sample_kappa_mu_rho_driver needs rho > -2");
    DrivingPath path;
    path.times = detail::time_grid(T, dt);
    KappaRhoStepper stepper(p, theta1, theta2, rng, chain);
    path.xi.push_back(stepper.xi());
    path.v.push_back(stepper.v());
    for (std::size_t k = 1; k < path.times.size(); ++k) {
        stepper.advance(path.times[k] - path.times[k - 1]);
        path.xi.push_back(stepper.xi());
        path.v.push_back(stepper.v());
    }
    return path;
}

enum class Side { Zero, TwoPi };

inline const char* to_string(Side s) { return s == Side::Zero ? "zero" : "two_pi"; }

struct GapOptions {
    double eps_abs = 1e-5;    // below this distance the exit is resolved exactly
    double T_cap = 50.0;
    bool record_path = false;
    double drift_fraction = 0.1;  // interior steps: |drift| h <= fraction * distance
    double layer_ds = 1.0 / 16.0;  // log-coordinate step near the boundary
    double t_stop = std::numeric_limits<double>::infinity();  // stop unabsorbed paths here
};

struct GapRun {
    double T = 0.0;  // absorption time, or t_stop for a stopped path
    Side side = Side::Zero;
    bool absorbed = true;
    double theta_end = 0.0;  // final value, 0 or 2pi when absorbed
    std::vector<double> times;  // recorded only on request
    std::vector<double> theta;
    RngSpec rng{};
    std::uint64_t steps = 0;
};

/// Gap diffusion d theta = sqrt(kappa) dB + ((kappa - 4)/2) cot(theta/2) dt,
/// run until it reaches 0 or 2pi.
///
/// In the middle band theta in [pi/2, 3pi/2] the SDE is stepped by
/// Euler-Maruyama. Closer to a boundary the distance g to it is written as
/// g = e^L with the clock ds = kappa dt / g^2, where
///
///     dL = m(g) ds + dW_s,   m(g) = ((kappa-4)/(2 kappa)) g cot(g/2) - 1/2,
///
/// is Brownian motion with a slowly varying drift; it is stepped in s with the
/// real time accumulated alongside. Below eps_abs the drift is constant to
/// O(eps_abs^2), and the exit is decided from the exact scale function: the
/// path reaches 2 eps_abs again with probability (g / (2 eps_abs))^{(8-kappa)/kappa}
/// and is absorbed otherwise, after a time of order eps_abs^2.
inline GapRun sample_gap_process(double kappa, double theta_gap0, double dt, RngSpec rng, const GapOptions& opt = {}) {
    require(kappa > 0.0 && kappa < 8.0, "sample_gap_process needs kappa in (0, 8)");
    require(theta_gap0 > 0.0 && theta_gap0 < two_pi, "initial gap must lie in (0, 2pi)");
    require(dt > 0.0, "dt must be positive");
    require(opt.eps_abs > 0.0 && opt.eps_abs < 0.25, "eps_abs must lie in (0, 1/4)");
    require(opt.layer_ds > 0.0 && opt.layer_ds <= 0.25, "layer_ds must lie in (0, 1/4]");
    require(opt.t_stop > 0.0, "t_stop must be positive");
    const bool capped = std::isfinite(opt.t_stop);
    const double stop_slack = 1e-12 * std::max(1.0, capped ? opt.t_stop : 1.0);
    GapRun run;
    run.rng = rng;
    RandomStream stream(rng);
    const double drift_coef = 0.5 * (kappa - 4.0);
    const double sk = std::sqrt(kappa);
    const double return_exponent = (8.0 - kappa) / kappa;
    const double eps = opt.eps_abs;
    double t = 0.0;
    double th = theta_gap0;
    auto record = [&](double time, double value) {
        if (opt.record_path) {
            run.times.push_back(time);
            run.theta.push_back(value);
        }
    };
    auto absorb = [&](double time, Side side) {
        run.T = time;
        run.side = side;
        run.theta_end = side == Side::Zero ? 0.0 : two_pi;
        record(time, run.theta_end);
    };
    record(t, th);
    while (true) {
        if (t > opt.T_cap) fail(ErrorKind::MaxTimeExceeded, "gap process not absorbed before T_cap");
        if (capped && t >= opt.t_stop - stop_slack) {
            run.T = opt.t_stop;
            run.absorbed = false;
            run.theta_end = th;
            break;
        }
        ++run.steps;
        const bool lower = th <= pi;
        const double g = lower ? th : two_pi - th;
        const Side near_side = lower ? Side::Zero : Side::TwoPi;
        if (g < eps) {
            const double p_return = std::pow(g / (2.0 * eps), return_exponent);
            if (stream.uniform() >= p_return) {
                absorb(t, near_side);
                break;
            }
            th = lower ? 2.0 * eps : two_pi - 2.0 * eps;
            record(t, th);
            continue;
        }
        if (g >= 0.5 * pi) {
            const double drift = drift_coef * cot(0.5 * th);
            double h = dt;
            if (drift != 0.0) h = std::min(h, opt.drift_fraction * g / std::fabs(drift));
            if (capped) h = std::min(h, opt.t_stop - t);
            const double next = th + drift * h + sk * std::sqrt(h) * stream.normal();
            if (next <= 0.0 || next >= two_pi) {
                const double barrier = next <= 0.0 ? 0.0 : two_pi;
                absorb(t + (barrier - th) / (next - th) * h, next <= 0.0 ? Side::Zero : Side::TwoPi);
                break;
            }
            t += h;
            th = next;
            record(t, th);
            continue;
        }
        double ds = std::min(opt.layer_ds, kappa * dt / (g * g));
        if (capped) ds = std::min(ds, kappa * (opt.t_stop - t) / (g * g));
        const double m = (kappa - 4.0) / (2.0 * kappa) * g * cot(0.5 * g) - 0.5;
        const double g_new = g * std::exp(m * ds + std::sqrt(ds) * stream.normal());
        if (g_new >= two_pi) {
            absorb(t, lower ? Side::TwoPi : Side::Zero);
            break;
        }
        t += 0.5 * (g * g + g_new * g_new) * ds / kappa;
        if (capped) t = std::min(t, opt.t_stop);
        th = lower ? g_new : two_pi - g_new;
        record(t, th);
    }
    if (run.T > opt.T_cap) fail(ErrorKind::MaxTimeExceeded, "gap process not absorbed before T_cap");
    return run;
}

} // namespace radsle
