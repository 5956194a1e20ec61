#pragma once

// Numerical checks of the identities behind the classification: the radial
// BPZ equations, the commutation relation between the two generators, and
// the first-order system at kappa = 0.

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radsle/common.hpp"
#include "radsle/finite_difference.hpp"
#include "radsle/partition.hpp"

namespace radsle {

using Field2 = std::function<double(double, double)>;

struct GeneratorSpec {
    double kappa = 0.0;
    Field2 b1;
    Field2 b2;

    static GeneratorSpec from_partition(const PartitionFn& pf) {
        return {pf.kappa(), [pf](double a, double b) { return drift_b(pf, 1, a, b); },
                [pf](double a, double b) { return drift_b(pf, 2, a, b); }};
    }
};

/// Largest |b_j(th1 + a, th2 + a) - b_j(th1, th2)| over the given samples.
inline double rotation_defect(const GeneratorSpec& spec, std::span<const std::pair<double, double>> points,
                              double shift) {
    double worst = 0.0;
    for (const auto& [a, b] : points) {
        worst = std::max(worst, std::fabs(spec.b1(a + shift, b + shift) - spec.b1(a, b)));
        worst = std::max(worst, std::fabs(spec.b2(a + shift, b + shift) - spec.b2(a, b)));
    }
    return worst;
}

struct ResidualReport {
    double th1 = 0.0;
    double th2 = 0.0;
    double value = 0.0;     // computed left-hand side (or residual when expected is 0)
    double expected = 0.0;  // exact right-hand side
    double fd_step = 0.0;   // finest step used; 0 for analytic evaluation
    double estimated_order = 0.0;
    std::vector<double> sweep;  // residuals at fd_step * 4, * 2, * 1 when a sweep was run

    double residual() const { return value - expected; }
};

struct TestFunction {
    std::string name;
    Field2 f;
};

/// Fixed battery used by the commutation checks.
inline std::vector<TestFunction> test_function_battery() {
    return {
        {"one", [](double, double) { return 1.0; }},
        {"theta1", [](double a, double) { return a; }},
        {"theta2", [](double, double b) { return b; }},
        {"sin1_plus_cos2", [](double a, double b) { return std::sin(a) + std::cos(b); }},
        {"sin1_sin2", [](double a, double b) { return std::sin(a) * std::sin(b); }},
        {"exp_sum", [](double a, double b) { return std::exp(0.1 * (a + b)); }},
    };
}

/// Constant F on the right-hand side of both radial BPZ equations.
inline double expected_F(const PartitionFn& pf) {
    const double kappa = pf.kappa();
    if (pf.is_spiral()) return (pf.mu() * pf.mu() - 3.0) / (2.0 * kappa);
    return (6.0 - kappa) * (kappa - 2.0) / (8.0 * kappa) - pf.alpha();
}

namespace detail {

inline void require_stencil(double th1, double th2, double reach) {
    const double gap = th2 - th1;
    if (!(gap - reach > 0.0 && gap + reach < two_pi))
        fail(ErrorKind::StencilOutOfDomain, "finite-difference stencil leaves 0 < th2 - th1 < 2pi");
}

// BPZ left-hand sides from log-derivatives of Z:
//   Z_11 / Z = (d1 log Z)^2 + d11 log Z.
inline double bpz_lhs(double kappa, int which, double gap, double l1, double l2, double l11, double l22) {
    const double c = cot(0.5 * gap);
    const double s = std::sin(0.5 * gap);
    const double h = (6.0 - kappa) / (2.0 * kappa);
    if (which == 1) return 0.5 * kappa * (l1 * l1 + l11) + c * l2 - h / (2.0 * s * s);
    return 0.5 * kappa * (l2 * l2 + l22) - c * l1 - h / (2.0 * s * s);
}

inline double bpz_fd(const PartitionFn& pf, double th1, double th2, int which, double h) {
    detail::require_stencil(th1, th2, 2.0 * h);
    const double z = eval_Z(pf, th1, th2);
    const double kappa = pf.kappa();
    const double gap = th2 - th1;
    const double c = cot(0.5 * gap);
    const double s = std::sin(0.5 * gap);
    const double hh = (6.0 - kappa) / (2.0 * kappa);
    auto along1 = [&](double x) { return eval_Z(pf, x, th2); };
    auto along2 = [&](double x) { return eval_Z(pf, th1, x); };
    if (which == 1)
        return 0.5 * kappa * fd::d2(along1, th1, h) / z + c * fd::d1(along2, th2, h) / z - hh / (2.0 * s * s);
    return 0.5 * kappa * fd::d2(along2, th2, h) / z - c * fd::d1(along1, th1, h) / z - hh / (2.0 * s * s);
}

} // namespace detail

struct BpzOptions {
    double base_step = 0.1;  // residuals at base, base/2, base/4
};

/// Residual of the radial BPZ equation `which` at (th1, th2). Spiral
/// partition functions use exact derivatives; CR-weighted ones use fourth
/// order differences of Z at three steps, Richardson-combined.
inline ResidualReport bpz_residual(const PartitionFn& pf, double th1, double th2, int which,
                                   const BpzOptions& opt = {}) {
    require(which == 1 || which == 2, "BPZ index must be 1 or 2");
    if (!ordered_pair(th1, th2)) fail(ErrorKind::Domain, "BPZ residual needs th1 < th2 < th1 + 2pi");
    const double gap = th2 - th1;
    ResidualReport rep;
    rep.th1 = th1;
    rep.th2 = th2;
    rep.expected = expected_F(pf);
    const double kappa = pf.kappa();
    if (pf.is_spiral()) {
        const double c = cot(0.5 * gap);
        const double s = std::sin(0.5 * gap);
        const double mu = pf.mu();
        const double l1 = (mu - c) / kappa;
        const double l2 = (mu + c) / kappa;
        const double l11 = -0.5 / (kappa * s * s);
        rep.value = detail::bpz_lhs(kappa, which, gap, l1, l2, l11, l11);
        rep.fd_step = 0.0;
        rep.estimated_order = INFINITY;
        return rep;
    }
    const double h0 = opt.base_step;
    const double r0 = detail::bpz_fd(pf, th1, th2, which, h0) - rep.expected;
    const double r1 = detail::bpz_fd(pf, th1, th2, which, 0.5 * h0) - rep.expected;
    const double r2 = detail::bpz_fd(pf, th1, th2, which, 0.25 * h0) - rep.expected;
    rep.sweep = {r0, r1, r2};
    rep.value = rep.expected + fd::richardson(r1, r2, 4.0);
    rep.fd_step = 0.25 * h0;
    rep.estimated_order = fd::observed_order(r1, r2);
    return rep;
}

namespace detail {

struct Generators {
    const GeneratorSpec& spec;

    // L_2 f at a point, by nested stencils of step h.
    double L2(const Field2& f, double a, double b, double h) const {
        auto fb = [&](double y) { return f(a, y); };
        auto fa = [&](double x) { return f(x, b); };
        return 0.5 * spec.kappa * fd::d2(fb, b, h) + spec.b2(a, b) * fd::d1(fb, b, h) +
               cot(0.5 * (a - b)) * fd::d1(fa, a, h);
    }

    double L1(const Field2& f, double a, double b, double h) const {
        auto fb = [&](double y) { return f(a, y); };
        auto fa = [&](double x) { return f(x, b); };
        return 0.5 * spec.kappa * fd::d2(fa, a, h) + spec.b1(a, b) * fd::d1(fa, a, h) +
               cot(0.5 * (b - a)) * fd::d1(fb, b, h);
    }

    double bracket_residual(const Field2& f, double a, double b, double h) const {
        const Field2 l2f = [&](double x, double y) { return L2(f, x, y, h); };
        const Field2 l1f = [&](double x, double y) { return L1(f, x, y, h); };
        const double s = std::sin(0.5 * (b - a));
        return L1(l2f, a, b, h) - L2(l1f, a, b, h) - (l2f(a, b) - l1f(a, b)) / (s * s);
    }
};

} // namespace detail

struct BracketOptions {
    double base_step = 0.1;
    double roundoff_floor = 1e-8;  // residuals below this count as converged
};

/// [L1, L2] f - (L2 - L1) f / sin^2((th2 - th1)/2) at a point. The sweep holds
/// the residual at base, base/2 and base/4; value is the finest one.
inline ResidualReport commutation_bracket_residual(const GeneratorSpec& spec, const Field2& f, double th1, double th2,
                                                   const BracketOptions& opt = {}) {
    if (!ordered_pair(th1, th2)) fail(ErrorKind::Domain, "bracket residual needs th1 < th2 < th1 + 2pi");
    detail::require_stencil(th1, th2, 8.0 * opt.base_step);
    const detail::Generators gen{spec};
    ResidualReport rep;
    rep.th1 = th1;
    rep.th2 = th2;
    rep.expected = 0.0;
    double h = opt.base_step;
    for (int k = 0; k < 3; ++k, h *= 0.5) rep.sweep.push_back(gen.bracket_residual(f, th1, th2, h));
    rep.fd_step = 0.25 * opt.base_step;
    rep.value = rep.sweep.back();
    if (std::fabs(rep.sweep[1]) < opt.roundoff_floor && std::fabs(rep.sweep[2]) < opt.roundoff_floor)
        rep.estimated_order = INFINITY;
    else
        rep.estimated_order = fd::observed_order(rep.sweep[1], rep.sweep[2]);
    return rep;
}

/// True when each halving in the sweep reduces the residual at least by the
/// factor 2^min_order, ignoring residuals already below the roundoff floor.
inline bool converges_at_order(const ResidualReport& rep, double min_order, double roundoff_floor = 1e-8) {
    for (std::size_t k = 1; k < rep.sweep.size(); ++k) {
        const double prev = std::fabs(rep.sweep[k - 1]);
        const double cur = std::fabs(rep.sweep[k]);
        if (cur < roundoff_floor) continue;
        if (!(prev >= std::pow(2.0, min_order) * cur)) return false;
    }
    return true;
}

/// d_1 b_2 - d_2 b_1 by fourth-order differences.
inline double drift_cross_symmetry(const GeneratorSpec& spec, double th1, double th2, double h = 1e-3) {
    detail::require_stencil(th1, th2, 2.0 * h);
    auto b2_of_1 = [&](double x) { return spec.b2(x, th2); };
    auto b1_of_2 = [&](double y) { return spec.b1(th1, y); };
    return fd::d1(b2_of_1, th1, h) - fd::d1(b1_of_2, th2, h);
}

// ---------------------------------------------------------------------------
// kappa = 0

struct ZeroKappaVariant {
    enum class Kind { Umu, Chordal } kind = Kind::Umu;
    double mu = 0.0;

    static ZeroKappaVariant umu(double mu) { return {Kind::Umu, mu}; }
    static ZeroKappaVariant chordal() { return {Kind::Chordal, 0.0}; }

    /// Constant the left-hand side takes for this solution.
    double constant() const { return kind == Kind::Umu ? mu * mu - 3.0 : -3.0; }
    std::string name() const { return kind == Kind::Umu ? "Umu" : "ChordalU"; }
};

/// (d2 U)^2 + 2 cot(th12/2) d1 U - 3 / sin^2(th12/2) with exact gradients.
inline ResidualReport zero_kappa_residual(const ZeroKappaVariant& var, double th1, double th2) {
    if (!ordered_pair(th1, th2)) fail(ErrorKind::Domain, "zero-kappa residual needs th1 < th2 < th1 + 2pi");
    const double c = cot(0.5 * (th2 - th1));
    const double s = std::sin(0.5 * (th2 - th1));
    double d1 = 0.0;
    double d2 = 0.0;
    if (var.kind == ZeroKappaVariant::Kind::Umu) {
        d1 = -c + var.mu;
        d2 = c + var.mu;
    } else {
        d1 = 3.0 * c;
        d2 = -3.0 * c;
    }
    ResidualReport rep;
    rep.th1 = th1;
    rep.th2 = th2;
    rep.value = d2 * d2 - 2.0 * c * d1 - 3.0 / (s * s);
    rep.expected = var.constant();
    rep.estimated_order = INFINITY;
    return rep;
}

struct ConstancyReport {
    double mean = 0.0;
    double max_deviation = 0.0;
    std::vector<ResidualReport> points;
};

/// Evaluates the left-hand side on the points and measures its spread.
inline ConstancyReport zero_kappa_constancy(const ZeroKappaVariant& var,
                                            std::span<const std::pair<double, double>> points) {
    ConstancyReport out;
    for (const auto& [a, b] : points) out.points.push_back(zero_kappa_residual(var, a, b));
    if (out.points.empty()) return out;
    double sum = 0.0;
    for (const auto& r : out.points) sum += r.value;
    out.mean = sum / static_cast<double>(out.points.size());
    for (const auto& r : out.points) out.max_deviation = std::max(out.max_deviation, std::fabs(r.value - out.mean));
    return out;
}

} // namespace radsle
