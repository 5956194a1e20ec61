#pragma once

// Curve samplers built from the drivers and the Loewner engine: single radial
// SLE traces, the two-sided pair with spiral, and Monte Carlo moments of the
// conformal radius from the absorbed gap diffusion.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "radsle/common.hpp"
#include "radsle/conformal_core.hpp"
#include "radsle/drivers.hpp"
#include "radsle/exact_sum.hpp"
#include "radsle/partition.hpp"
#include "radsle/rng.hpp"

namespace radsle {

// ---------------------------------------------------------------------------
// Parallel map with a deterministic result order
// ---------------------------------------------------------------------------

/// Evaluates f(i) for i in [0, n) on up to `workers` threads. Results are
/// stored by index, so the output does not depend on the worker count. If
/// any call throws, the exception from the smallest failing index is
/// rethrown.
template <class F>
auto parallel_map(std::size_t n, unsigned workers, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<R> out(n);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::size_t> error_index(workers, std::numeric_limits<std::size_t>::max());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            // Contiguous blocks keep each thread on neighbouring streams.
            const std::size_t lo = n * w / workers;
            const std::size_t hi = n * (w + 1) / workers;
            for (std::size_t i = lo; i < hi; ++i) {
                try {
                    out[i] = f(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                    error_index[w] = i;
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::exception_ptr first;
    for (unsigned w = 0; w < workers; ++w) {
        if (errors[w] && error_index[w] < best) {
            best = error_index[w];
            first = errors[w];
        }
    }
    if (first) std::rethrow_exception(first);
    return out;
}

// ---------------------------------------------------------------------------
// Single radial SLE
// ---------------------------------------------------------------------------

struct RadialSample {
    CurveTrace trace;
    LoewnerChain chain;
    DrivingPath driver;
};

/// Samples radial SLE_kappa^mu (no force point) or SLE_kappa^mu(rho) with
/// force point th2, and traces the tip at up to n_points grid times.
inline RadialSample sample_radial_sle(const SleParams& p, double th1, std::optional<double> th2, double T, double dt,
                                      std::size_t n_points, RngSpec rng) {
    require(p.kappa >= 0.0 && p.kappa < 8.0, "trace_radial_sle needs kappa in [0, 8)");
    require(std::isfinite(th1), "theta1 must be finite");
    require(T >= 0.0 && std::isfinite(T), "T must be finite and >= 0");
    require(dt > 0.0, "dt must be positive");
    require(n_points >= 1, "n_points must be at least 1");
    RadialSample out;
    if (T == 0.0) {
        out.trace.push(0.0, detail::unit(th1));
        out.driver.times = {0.0};
        out.driver.xi = {th1};
        if (th2) out.driver.v = {*th2};
        return out;
    }
    // chain size reached at each grid node
    std::vector<std::size_t> node_sizes;
    if (th2) {
        require(p.rho > -2.0, "rho must exceed -2");
        out.driver.times = detail::time_grid(T, dt);
        KappaRhoStepper stepper(p, th1, *th2, rng, &out.chain);
        node_sizes.push_back(0);
        out.driver.xi.push_back(stepper.xi());
        out.driver.v.push_back(stepper.v());
        for (std::size_t k = 1; k < out.driver.times.size(); ++k) {
            stepper.advance(out.driver.times[k] - out.driver.times[k - 1]);
            node_sizes.push_back(out.chain.size());
            out.driver.xi.push_back(stepper.xi());
            out.driver.v.push_back(stepper.v());
        }
    } else {
        out.driver = sample_radial_driver(p, th1, T, dt, rng);
        out.chain = chain_from_path(out.driver);
        node_sizes.resize(out.driver.size());
        for (std::size_t k = 0; k < node_sizes.size(); ++k) node_sizes[k] = k;
    }
    std::vector<std::size_t> prefixes;
    for (std::size_t k : even_prefixes(node_sizes.size() - 1, n_points)) prefixes.push_back(node_sizes[k]);
    out.trace = trace_chain(out.chain, th1, prefixes);
    return out;
}

inline CurveTrace trace_radial_sle(const SleParams& p, double th1, std::optional<double> th2, double T, double dt,
                                   std::size_t n_points, RngSpec rng) {
    return sample_radial_sle(p, th1, th2, T, dt, n_points, rng).trace;
}

// ---------------------------------------------------------------------------
// Two-sided radial SLE with spiral
// ---------------------------------------------------------------------------

struct PairState {
    LoewnerChain chain;
    double theta1_t = 0.0;
    double theta2_t = 0.0;
    double cap1 = 0.0;
    double cap2 = 0.0;
};

/// Angles after one growth turn of one curve.
struct PairTurn {
    int curve = 1;
    double theta1 = 0.0;
    double theta2 = 0.0;
};

struct PairOptions {
    bool swap_streams = false;  // curve 1 uses the second stream and vice versa
    bool record_traces = true;
};

struct PairSample {
    CurveTrace curve1;
    CurveTrace curve2;
    PairState state;
    std::vector<PairTurn> turns;
};

/// Grows the two curves alternately by eps_step of common capacity each,
/// until each has received total_cap. During a turn the growing curve follows
/// the radial SLE_kappa^mu(2) driver with the other image angle as force
/// point, and that angle is carried along by the boundary flow. Curve j draws
/// its noise from stream 2 s + (j - 1) of the given spec.
inline PairSample sample_two_sided_pair(double kappa, double mu, double th1, double th2, double total_cap,
                                        double eps_step, RngSpec rng, const PairOptions& opt = {}) {
    require(kappa >= 0.0 && kappa <= 4.0, "pair sampler needs kappa in [0, 4]");
    require(ordered_pair(th1, th2), "pair sampler needs th1 < th2 < th1 + 2pi");
    require(total_cap >= 0.0 && std::isfinite(total_cap), "total_cap must be finite and >= 0");
    require(eps_step > 0.0, "eps_step must be positive");
    const SleParams p(kappa, mu, 2.0);
    RngSpec s1{rng.seed, 2 * rng.stream};
    RngSpec s2{rng.seed, 2 * rng.stream + 1};
    if (opt.swap_streams) std::swap(s1, s2);

    PairSample out;
    PairState& st = out.state;
    st.theta1_t = th1;
    st.theta2_t = th2;
    KappaRhoStepper grow1(p, th1, th2, s1, &st.chain);
    KappaRhoStepper grow2(p, th2, th1, s2, &st.chain);
    if (opt.record_traces) {
        out.curve1.push(0.0, detail::unit(th1));
        out.curve2.push(0.0, detail::unit(th2));
    }
    const auto n_turns = static_cast<std::size_t>(std::ceil(total_cap / eps_step * (1.0 - 1e-12)));
    ExactSum cap1, cap2;
    for (std::size_t k = 0; k < n_turns; ++k) {
        const double h = std::min(eps_step, total_cap - static_cast<double>(k) * eps_step);
        if (!(h > 0.0)) break;

        grow1.restart(st.theta1_t, st.theta2_t);
        grow1.advance(h);
        st.theta1_t = grow1.xi();
        st.theta2_t = grow1.v() - grow1.v_offset();
        cap1.add(h);
        out.turns.push_back({1, st.theta1_t, st.theta2_t});
        if (opt.record_traces) out.curve1.push(cap1.value(), tip_point(st.chain));

        grow2.restart(st.theta2_t, st.theta1_t);
        grow2.advance(h);
        st.theta2_t = grow2.xi();
        st.theta1_t = grow2.v() - grow2.v_offset();
        cap2.add(h);
        out.turns.push_back({2, st.theta1_t, st.theta2_t});
        if (opt.record_traces) out.curve2.push(cap2.value(), tip_point(st.chain));
    }
    st.cap1 = cap1.value();
    st.cap2 = cap2.value();
    return out;
}

/// Smallest distance between points of two traces, ignoring points within
/// `exclude_radius` of the origin.
inline double min_pair_distance(const CurveTrace& a, const CurveTrace& b, double exclude_radius) {
    double best = std::numeric_limits<double>::infinity();
    for (const complex& z : a.points) {
        if (std::abs(z) <= exclude_radius) continue;
        for (const complex& w : b.points) {
            if (std::abs(w) <= exclude_radius) continue;
            best = std::min(best, std::abs(z - w));
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Conformal-radius moments
// ---------------------------------------------------------------------------

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(n)
    std::size_t n = 0;
    RngSpec seed{};
    double dt = 0.0;
    double eps_abs = 0.0;
    bool variance_warning = false;
};

struct McOptions {
    unsigned workers = 1;
    double eps_abs = 1e-5;
    double T_cap = 500.0;
    double layer_ds = 1.0 / 16.0;
};

namespace detail {

inline void check_moment_domain(double kappa, double alpha, double theta) {
    require(kappa > 0.0 && kappa < 8.0, "moment estimates need kappa in (0, 8)");
    require(std::isfinite(alpha), "alpha must be finite");
    if (alpha >= alpha_critical(kappa)) fail(ErrorKind::Divergent, "moment is infinite for alpha >= 1 - kappa/8");
    require(theta > 0.0 && theta < two_pi, "theta must lie in (0, 2pi)");
}

inline GapOptions gap_options(const McOptions& mc) {
    GapOptions g;
    g.eps_abs = mc.eps_abs;
    g.T_cap = mc.T_cap;
    g.layer_ds = mc.layer_ds;
    return g;
}

// Mean = exact sum / n; standard error from the centred second moment.
inline McEstimate summarize(const std::vector<double>& x, double mean) {
    McEstimate e;
    e.n = x.size();
    e.mean = mean;
    if (x.size() > 1) {
        ExactSum ss;
        for (double v : x) ss.add((v - mean) * (v - mean));
        const double var = ss.value() / static_cast<double>(x.size() - 1);
        e.std_error = std::sqrt(var / static_cast<double>(x.size()));
    }
    return e;
}

inline double exact_mean(const std::vector<double>& x) {
    if (x.empty()) return 0.0;
    ExactSum s;
    for (double v : x) s.add(v);
    return s.value() / static_cast<double>(x.size());
}

} // namespace detail

/// Per-path sample of the moment estimator: weight e^{alpha T} and the
/// absorption side.
struct MomentPath {
    double weight = 0.0;
    Side side = Side::Zero;
};

inline std::vector<MomentPath> sample_moment_paths(double kappa, double alpha, double theta, std::size_t n, double dt,
                                                   RngSpec rng, const McOptions& mc = {}) {
    detail::check_moment_domain(kappa, alpha, theta);
    require(n >= 1, "n must be at least 1");
    const GapOptions gopt = detail::gap_options(mc);
    return parallel_map(n, mc.workers, [&](std::size_t i) {
        const GapRun run = sample_gap_process(kappa, theta, dt, rng.with_stream(rng.stream + i), gopt);
        return MomentPath{std::exp(alpha * run.T), run.side};
    });
}

struct SidedEstimate {
    McEstimate left;   // absorbed at 2pi
    McEstimate right;  // absorbed at 0
    McEstimate total;
};

/// Splits the moment by absorption side. The left part collects paths
/// absorbed at 2pi. total.mean is left.mean + right.mean.
inline SidedEstimate estimate_cr_moment_sided(double kappa, double alpha, double theta, std::size_t n, double dt,
                                              RngSpec rng, const McOptions& mc = {}) {
    const auto paths = sample_moment_paths(kappa, alpha, theta, n, dt, rng, mc);
    std::vector<double> xl(n), xr(n), xt(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool left = paths[i].side == Side::TwoPi;
        xl[i] = left ? paths[i].weight : 0.0;
        xr[i] = left ? 0.0 : paths[i].weight;
        xt[i] = paths[i].weight;
    }
    SidedEstimate out;
    out.left = detail::summarize(xl, detail::exact_mean(xl));
    out.right = detail::summarize(xr, detail::exact_mean(xr));
    out.total = detail::summarize(xt, out.left.mean + out.right.mean);
    const bool warn = alpha > 0.8 * alpha_critical(kappa);
    for (McEstimate* e : {&out.left, &out.right, &out.total}) {
        e->seed = rng;
        e->dt = dt;
        e->eps_abs = mc.eps_abs;
        e->variance_warning = warn;
    }
    return out;
}

/// Monte Carlo estimate of E_theta[CR^{-alpha}] as the mean of e^{alpha T}.
inline McEstimate estimate_cr_moment(double kappa, double alpha, double theta, std::size_t n, double dt, RngSpec rng,
                                     const McOptions& mc = {}) {
    detail::check_moment_domain(kappa, alpha, theta);
    if (alpha == 0.0) {
        McEstimate e;
        e.mean = 1.0;
        e.n = n;
        e.seed = rng;
        e.dt = dt;
        e.eps_abs = mc.eps_abs;
        return e;
    }
    return estimate_cr_moment_sided(kappa, alpha, theta, n, dt, rng, mc).total;
}

/// Mean of e^{alpha (t ^ T)} Phi(sin(theta_{t ^ T}/4)^2) with Phi the exact
/// moment; absorbed paths use Phi = 1 at the endpoints.
inline McEstimate martingale_check(double kappa, double alpha, double theta0, double t_fixed, std::size_t n, double dt,
                                   RngSpec rng, const McOptions& mc = {}) {
    detail::check_moment_domain(kappa, alpha, theta0);
    require(t_fixed >= 0.0 && std::isfinite(t_fixed), "t_fixed must be finite and >= 0");
    require(n >= 1, "n must be at least 1");
    const CrMomentExact phi(kappa, alpha);
    McEstimate e;
    e.seed = rng;
    e.dt = dt;
    e.eps_abs = mc.eps_abs;
    e.variance_warning = alpha > 0.8 * alpha_critical(kappa);
    e.n = n;
    if (alpha == 0.0) {
        e.mean = 1.0;
        return e;
    }
    const double u0 = std::pow(std::sin(0.25 * theta0), 2);
    if (t_fixed == 0.0) {
        e.mean = phi(u0);
        return e;
    }
    GapOptions gopt = detail::gap_options(mc);
    gopt.t_stop = t_fixed;
    const auto x = parallel_map(n, mc.workers, [&](std::size_t i) {
        const GapRun run = sample_gap_process(kappa, theta0, dt, rng.with_stream(rng.stream + i), gopt);
        const double w = std::exp(alpha * run.T);
        if (run.absorbed) return w;
        const double s = std::sin(0.25 * run.theta_end);
        return w * phi(s * s);
    });
    McEstimate out = detail::summarize(x, detail::exact_mean(x));
    out.seed = e.seed;
    out.dt = e.dt;
    out.eps_abs = e.eps_abs;
    out.variance_warning = e.variance_warning;
    return out;
}

/// |a - b| / sqrt(se_a^2 + se_b^2); zero when both errors vanish and a == b.
inline double joint_z(double a, double se_a, double b, double se_b) {
    const double s = std::hypot(se_a, se_b);
    if (s == 0.0) return a == b ? 0.0 : std::numeric_limits<double>::infinity();
    return std::fabs(a - b) / s;
}

// ---------------------------------------------------------------------------
// Two-sample Kolmogorov-Smirnov test
// ---------------------------------------------------------------------------

inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    require(!a.empty() && !b.empty(), "KS test needs nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Large-sample critical value at the 1% level.
inline double ks_critical_1pct(std::size_t n, std::size_t m) {
    const double a = static_cast<double>(n), b = static_cast<double>(m);
    return 1.628 * std::sqrt((a + b) / (a * b));
}

} // namespace radsle
