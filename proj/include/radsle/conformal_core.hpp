#pragma once

// Discrete radial Loewner engine.
//
// A chain is a sequence of capacity increments with the driver held constant
// on each increment. For a constant driver the radial Loewner flow is known in
// closed form: with w = e^{-i xi} z and the Cayley variable s = (1-w)/(1+w),
// one increment of capacity dt maps s to S with
//
//     S^2 = e^{dt} s^2 - (e^{dt} - 1),
//
// so every step map (and its inverse) is evaluated exactly, without
// integrating the ODE. On the unit circle the same flow reduces to
// cos(u_t/2) = cos(u_0/2) e^{-t/2} for the gap u = V - xi.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "radsle/common.hpp"
#include "radsle/exact_sum.hpp"

namespace radsle {

using complex = std::complex<double>;

struct LoewnerStep {
    double dt;  // capacity increment, > 0
    double xi;  // driver angle on this increment (continuous branch)
};

class LoewnerChain {
public:
    LoewnerChain() = default;

    explicit LoewnerChain(std::span<const LoewnerStep> steps) {
        steps_.reserve(steps.size());
        for (const auto& s : steps) append(s.dt, s.xi);
    }

    void append(double dt, double xi) {
        require(dt > 0.0 && std::isfinite(dt), "capacity increment must be positive and finite");
        require(std::isfinite(xi), "driver angle must be finite");
        steps_.push_back({dt, xi});
        capacity_.add(dt);
    }

    void append(const LoewnerChain& other) {
        steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
        capacity_.add(other.capacity_);
    }

    const std::vector<LoewnerStep>& steps() const noexcept { return steps_; }
    std::size_t size() const noexcept { return steps_.size(); }
    bool empty() const noexcept { return steps_.empty(); }

    /// Sum of the step increments, rounded once.
    double total_capacity() const { return capacity_.value(); }

    /// First k steps.
    LoewnerChain prefix(std::size_t k) const {
        k = std::min(k, steps_.size());
        return LoewnerChain(std::span<const LoewnerStep>(steps_.data(), k));
    }

    /// Steps [k, size).
    LoewnerChain suffix(std::size_t k) const {
        k = std::min(k, steps_.size());
        return LoewnerChain(std::span<const LoewnerStep>(steps_.data() + k, steps_.size() - k));
    }

    /// Every driver shifted by a.
    LoewnerChain rotated(double a) const {
        LoewnerChain out;
        out.steps_.reserve(steps_.size());
        for (const auto& s : steps_) out.append(s.dt, s.xi + a);
        return out;
    }

private:
    std::vector<LoewnerStep> steps_;
    ExactSum capacity_;
};

inline LoewnerChain concatenate(const LoewnerChain& first, const LoewnerChain& second) {
    LoewnerChain out = first;
    out.append(second);
    return out;
}

/// Sampled curve: tip positions at ascending capacity times.
struct CurveTrace {
    std::vector<double> times;
    std::vector<complex> points;

    std::size_t size() const noexcept { return points.size(); }
    void push(double t, complex z) {
        times.push_back(t);
        points.push_back(z);
    }
};

namespace detail {

inline complex unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Boundary gap u in (0, 2pi) after capacity dt.
inline double flow_gap(double u, double dt) {
    const double s = std::sin(0.5 * u);
    const double c = std::cos(0.5 * u);
    const double decay = std::exp(-dt);
    // sin^2(u_t/2) = sin^2(u/2) e^{-t} + (1 - e^{-t})
    const double s2 = s * s * decay - std::expm1(-dt);
    return 2.0 * std::atan2(std::sqrt(s2), c * std::exp(-0.5 * dt));
}

// Preimage of a boundary gap under one step. Returns false when the point
// lies on the slit grown during the step; then `slit_radius` holds its
// (real, rotated-frame) preimage.
inline bool unflow_gap(double u, double dt, double& u0, double& slit_radius) {
    const double s = std::sin(0.5 * u);
    const double c = std::cos(0.5 * u);
    const double growth = std::expm1(dt);
    // sin^2(u_0/2) = sin^2(u/2) e^{t} - (e^{t} - 1)
    const double s2 = s * s * (1.0 + growth) - growth;
    if (s2 >= 0.0) {
        u0 = 2.0 * std::atan2(std::sqrt(s2), c * std::exp(0.5 * dt));
        return true;
    }
    // On the slit: S = -i tan(u/2), s = sqrt((e^dt - 1 - tan^2) e^{-dt}).
    const double t = s / c;
    const double arg = std::max(0.0, (growth - t * t) * std::exp(-dt));
    const double root = std::sqrt(arg);
    slit_radius = (1.0 - root) / (1.0 + root);
    return false;
}

inline complex cayley(complex w) { return (1.0 - w) / (1.0 + w); }

} // namespace detail

/// Advances a marked boundary angle by capacity dt under dV/dt = cot((V - xi)/2)
/// with the driver frozen. The gap never crosses 0 or 2pi.
inline double boundary_flow_step(double v, double xi, double dt) {
    require(dt >= 0.0, "boundary flow needs dt >= 0");
    if (std::fabs(std::sin(0.5 * (v - xi))) < tol_gap)
        fail(ErrorKind::SingularGap, "marked point coincides with the driver (swallowed)");
    if (dt == 0.0) return v;
    const double u = wrap_two_pi(v - xi);
    return v + (detail::flow_gap(u, dt) - u);
}

/// Evaluates g_t(z) for the chain.
inline complex forward_map(const LoewnerChain& chain, complex z) {
    require(std::abs(z) <= 1.0 + tol_geom, "forward_map needs |z| <= 1");
    const double r = std::abs(z);
    if (r >= 1.0 - 1e-14) {
        double theta = std::arg(z);
        for (const auto& step : chain.steps()) {
            if (std::fabs(std::sin(0.5 * (theta - step.xi))) < tol_swallow)
                fail(ErrorKind::PointSwallowed, "boundary point hit by the driver");
            theta = boundary_flow_step(theta, step.xi, step.dt);
        }
        return detail::unit(theta);
    }
    for (const auto& step : chain.steps()) {
        if (z == complex(0.0, 0.0)) return z;
        const complex rot = detail::unit(step.xi);
        const complex w = z / rot;
        const complex s = detail::cayley(w);
        const complex s2 = s * s;
        // Closest approach of the trajectory to the driver: |S_tau|^2 =
        // e^tau |s^2 - (1 - e^{-tau})|, minimised over tau in [0, dt].
        const double seg_end = -std::expm1(-step.dt);
        const double x = std::clamp(s2.real(), 0.0, seg_end);
        const double dist2 = std::abs(s2 - complex(x, 0.0)) / (1.0 - x);
        if (2.0 * std::sqrt(dist2) < tol_swallow)
            fail(ErrorKind::PointSwallowed, "trajectory reaches the driver point");
        const double growth = std::expm1(step.dt);
        const complex S = std::sqrt((1.0 + growth) * s2 - growth);
        z = rot * detail::cayley(S);
    }
    return z;
}

namespace detail {

// Pulls an interior point back through steps [0, end).
inline complex pullback_interior(std::span<const LoewnerStep> steps, std::size_t end, complex z) {
    for (std::size_t k = end; k-- > 0;) {
        const auto& step = steps[k];
        const complex rot = unit(step.xi);
        const complex S = cayley(z / rot);
        const double growth = std::expm1(step.dt);
        const complex s = std::sqrt((S * S + growth) * std::exp(-step.dt));
        z = rot * cayley(s);
        if (!(std::abs(z) <= 1.0 + tol_geom))
            fail(ErrorKind::NumericalBlowup, "backward map left the closed disc");
    }
    return z;
}

} // namespace detail

/// Evaluates g_t^{-1}(w) for |w| <= 1. Boundary points may land on a slit.
inline complex inverse_map(const LoewnerChain& chain, complex w) {
    require(std::abs(w) <= 1.0 + tol_geom, "inverse_map needs |w| <= 1");
    const auto& steps = chain.steps();
    if (std::abs(w) < 1.0 - 1e-14) return detail::pullback_interior(steps, steps.size(), w);

    double theta = std::arg(w);
    for (std::size_t k = steps.size(); k-- > 0;) {
        const auto& step = steps[k];
        double u = wrap_two_pi(theta - step.xi);
        if (u == 0.0 || std::fabs(std::sin(0.5 * u)) < 1e-15) {
            // The driver point itself: tip of this step's slit.
            const double root = std::sqrt(-std::expm1(-step.dt));
            const complex z = detail::unit(step.xi) * ((1.0 - root) / (1.0 + root));
            return detail::pullback_interior(steps, k, z);
        }
        double u0 = 0.0;
        double radius = 0.0;
        if (!detail::unflow_gap(u, step.dt, u0, radius)) {
            const complex z = detail::unit(step.xi) * radius;
            return detail::pullback_interior(steps, k, z);
        }
        theta += u0 - u;
    }
    return detail::unit(theta);
}

/// Curve tip g_t^{-1}(e^{i xi_t}), with xi_t the driver of the last step.
inline complex tip_point(const LoewnerChain& chain) {
    require(!chain.empty(), "tip_point needs a nonempty chain");
    const auto& steps = chain.steps();
    const auto& last = steps.back();
    const double root = std::sqrt(-std::expm1(-last.dt));
    const complex z = detail::unit(last.xi) * ((1.0 - root) / (1.0 + root));
    return detail::pullback_interior(steps, steps.size() - 1, z);
}

/// CR of the complement of the hull seen from 0, exp(-capacity).
inline double conformal_radius(const LoewnerChain& chain) { return std::exp(-chain.total_capacity()); }

/// Tips of every prefix whose index is listed (index 0 is the start point
/// e^{i theta0}).
inline CurveTrace trace_chain(const LoewnerChain& chain, double theta0, std::span<const std::size_t> prefix_lengths) {
    CurveTrace trace;
    const auto& steps = chain.steps();
    ExactSum t;
    std::size_t done = 0;
    for (std::size_t k : prefix_lengths) {
        require(k <= steps.size(), "prefix length exceeds chain");
        for (; done < k; ++done) t.add(steps[done].dt);
        if (k == 0) {
            trace.push(0.0, detail::unit(theta0));
        } else {
            const auto& last = steps[k - 1];
            const double root = std::sqrt(-std::expm1(-last.dt));
            const complex z = detail::unit(last.xi) * ((1.0 - root) / (1.0 + root));
            trace.push(t.value(), detail::pullback_interior(steps, k - 1, z));
        }
    }
    return trace;
}

/// Evenly spread prefix lengths 0..n_steps inclusive, n_points of them (at
/// least the two endpoints when n_steps > 0).
inline std::vector<std::size_t> even_prefixes(std::size_t n_steps, std::size_t n_points) {
    std::vector<std::size_t> out;
    if (n_steps == 0) return {0};
    if (n_points <= 1) return {n_steps};
    for (std::size_t i = 0; i < n_points; ++i) {
        const std::size_t k = (i * n_steps + (n_points - 1) / 2) / (n_points - 1);
        if (out.empty() || k != out.back()) out.push_back(k);
    }
    if (out.back() != n_steps) out.push_back(n_steps);
    return out;
}

} // namespace radsle
