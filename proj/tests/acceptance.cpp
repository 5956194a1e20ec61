// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Monte Carlo criteria use the fixed seed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "radsle/radsle.hpp"

using namespace radsle;

namespace {

constexpr std::uint64_t kSeed = 20261014;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// Random interior points with gap in [margin, 2pi - margin].
std::vector<std::pair<double, double>> random_points(std::size_t n, double margin, std::uint64_t stream) {
    RandomStream rs(RngSpec{kSeed, stream});
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double th1 = -pi + two_pi * rs.uniform();
        const double gap = margin + (two_pi - 2.0 * margin) * rs.uniform();
        pts.emplace_back(th1, th1 + gap);
    }
    return pts;
}

Outcome closed_forms_kappa4() {
    double worst = 0.0;
    for (double alpha : {0.05, 0.125, 0.32, 0.45, -0.5, -2.0}) {
        const PartitionFn pf = PartitionFn::cr_weighted(4.0, alpha);
        for (int k = 0; k <= 600; ++k) {
            const double th = 0.1 + (two_pi - 0.2) * k / 600.0;
            const double r = std::sqrt(std::fabs(alpha) / 2.0) * (th - pi);
            const double closed = std::pow(std::sin(0.5 * th), -0.5) * (alpha >= 0 ? std::cos(r) : std::cosh(r));
            worst = std::max(worst, std::fabs(eval_Z_alpha(pf, 0.0, th) - closed));
        }
    }
    return {worst < 1e-8, fmt("max abs error %.3g over 6 alphas", worst)};
}

Outcome critical_solution() {
    double worst = 0.0;
    bool dichotomy = true;
    std::string notes;
    for (double kappa : {2.0, 3.0, 6.0}) {
        const double a0 = alpha_critical(kappa);
        const HypSolution h = solve_phi_alpha(kappa, a0);
        for (std::size_t k = 0; k < h.u_grid.size(); ++k) {
            const double u = h.u_grid[k];
            worst = std::max(worst, std::fabs(h.phi[k] - std::pow(4.0 * u * (1.0 - u), 4.0 / kappa - 0.5)));
        }
        const HypSolution below = solve_phi_alpha(kappa, a0 - 0.05);
        const HypSolution above = solve_phi_alpha(kappa, a0 + 0.05);
        const bool ok = !below.sign_change && below.min_phi > 0.0 && above.sign_change.has_value();
        dichotomy = dichotomy && ok;
        if (above.sign_change) notes += fmt(" k=%g:root u=%.3g", kappa, above.sign_change->u);
    }
    return {worst < 1e-8 && dichotomy,
            fmt("max abs error %.3g", worst) + (dichotomy ? ", dichotomy ok;" : ", dichotomy FAILED;") + notes};
}

Outcome bpz_constants() {
    const auto pts = random_points(20, 0.5, 1);
    double spiral_worst = 0.0;
    for (double kappa : {2.0, 4.0})
        for (double mu : {0.0, 1.0, std::sqrt(3.0)}) {
            const PartitionFn pf = PartitionFn::spiral(kappa, mu);
            for (const auto& [a, b] : pts)
                for (int which : {1, 2})
                    spiral_worst = std::max(spiral_worst, std::fabs(bpz_residual(pf, a, b, which).residual()));
        }
    double cr_worst = 0.0, f12 = 0.0, min_order = INFINITY;
    bool order_ok = true;
    for (auto [kappa, alpha] : {std::pair{3.0, 0.4}, std::pair{4.0, 0.125}}) {
        const PartitionFn pf = PartitionFn::cr_weighted(kappa, alpha);
        for (const auto& [a, b] : pts) {
            const ResidualReport r1 = bpz_residual(pf, a, b, 1);
            const ResidualReport r2 = bpz_residual(pf, a, b, 2);
            cr_worst = std::max({cr_worst, std::fabs(r1.residual()), std::fabs(r2.residual())});
            f12 = std::max(f12, std::fabs(r1.value - r2.value));
            for (const auto* r : {&r1, &r2}) {
                order_ok = order_ok && converges_at_order(*r, 2.0);
                if (std::fabs(r->sweep.back()) >= 1e-8) min_order = std::min(min_order, r->estimated_order);
            }
        }
    }
    const bool pass = spiral_worst < 1e-9 && cr_worst < 1e-4 && order_ok && f12 < 1e-5;
    return {pass, fmt("spiral max %.3g, CR max %.3g, ", spiral_worst, cr_worst) +
                      fmt("F1-F2 max %.3g, min observed order %.2f", f12, min_order) +
                      (order_ok ? "" : " (order check FAILED)")};
}

Outcome commutation_bracket() {
    std::vector<std::pair<double, double>> pts;
    for (double th1 : {0.0, 1.0})
        for (double gap : {pi / 3.0, pi / 2.0, 2.0 * pi / 3.0, pi, 4.0 * pi / 3.0, 5.0 * pi / 3.0})
            pts.emplace_back(th1, th1 + gap);
    bool conv = true;
    double worst = 0.0;
    const std::vector<PartitionFn> family = {PartitionFn::spiral(2.0, 1.0), PartitionFn::cr_weighted(3.0, 0.4)};
    const auto battery = test_function_battery();
    for (const PartitionFn& pf : family) {
        const GeneratorSpec spec = GeneratorSpec::from_partition(pf);
        for (const auto& tf : battery)
            for (const auto& [a, b] : pts) {
                const ResidualReport r = commutation_bracket_residual(spec, tf.f, a, b);
                conv = conv && converges_at_order(r, 2.0);
                worst = std::max(worst, std::fabs(r.residual()));
            }
    }
    // Perturbed drift: the residual must stall above 1e-3.
    GeneratorSpec bad = GeneratorSpec::from_partition(family[1]);
    const Field2 b1 = bad.b1;
    bad.b1 = [b1](double a, double b) { return b1(a, b) + 0.1; };
    double plateau = 0.0;
    for (const auto& tf : battery)
        for (const auto& [a, b] : pts) {
            const ResidualReport r = commutation_bracket_residual(bad, tf.f, a, b);
            const double stall = std::min({std::fabs(r.sweep[0]), std::fabs(r.sweep[1]), std::fabs(r.sweep[2])});
            plateau = std::max(plateau, stall);
        }
    return {conv && plateau > 1e-3, std::string("order >= 2 on battery: ") + (conv ? "yes" : "NO") +
                                        fmt(", finest residual max %.3g, perturbed plateau %.3g", worst, plateau)};
}

Outcome cr_moments() {
    bool pass = true;
    std::string d;
    struct Case {
        double kappa, alpha, theta;
    };
    for (const Case& c : {Case{3.0, 0.5, pi}, Case{3.0, 0.3, pi / 2.0}, Case{6.0, 0.1, pi}}) {
        const double u = std::pow(std::sin(0.25 * c.theta), 2);
        const double exact = cr_moment_exact(c.kappa, c.alpha, u);
        const McEstimate e = estimate_cr_moment(c.kappa, c.alpha, c.theta, 100000, 1e-3, RngSpec{kSeed, 0});
        const double z = (e.mean - exact) / e.std_error;
        pass = pass && std::fabs(z) <= 3.0;
        d += fmt("(k=%g,a=%g", c.kappa, c.alpha) + fmt(") mc %.5f se %.5f", e.mean, e.std_error) +
             fmt(" exact %.5f z=%+.2f; ", exact, z);
        // Ratio against the normalized ODE solution.
        const CrMomentExact phi(c.kappa, c.alpha);
        const HypSolution h = solve_phi_alpha(c.kappa, c.alpha);
        const double mid = phi(0.5);
        double worst = 0.0;
        for (int k = 0; k <= 900; ++k) {
            const double v = 0.05 + 0.9 * k / 900.0;
            worst = std::max(worst, std::fabs(phi(v) / mid - h(v)));
        }
        pass = pass && worst < 1e-6;
        d += fmt("ratio err %.2g; ", worst);
    }
    return {pass, d};
}

Outcome martingale_identity() {
    const double target = cr_moment_exact(3.0, 0.5, 0.5);
    bool pass = true;
    std::string d = fmt("Phi(1/2)=%.6f;", target);
    for (double t : {0.25, 0.5, 1.0}) {
        const McEstimate m = martingale_check(3.0, 0.5, pi, t, 100000, 1e-3, RngSpec{kSeed, 0});
        const double z = (m.mean - target) / m.std_error;
        pass = pass && std::fabs(z) <= 3.0;
        d += fmt(" t=%g", t) + fmt(" mean %.5f z=%+.2f;", m.mean, z);
    }
    return {pass, d};
}

Outcome symmetry_battery() {
    const McEstimate a = estimate_cr_moment(3.0, 0.3, pi / 2.0, 100000, 1e-3, RngSpec{kSeed, 0});
    const McEstimate b = estimate_cr_moment(3.0, 0.3, 3.0 * pi / 2.0, 100000, 1e-3, RngSpec{kSeed, 1000000});
    const double z_sym = joint_z(a.mean, a.std_error, b.mean, b.std_error);
    const SidedEstimate side = estimate_cr_moment_sided(3.0, 0.0, pi, 100000, 1e-3, RngSpec{kSeed, 2000000});
    const double z_side = std::fabs(side.left.mean - 0.5) / side.left.std_error;
    double lam_err = 0.0;
    const auto pts = random_points(10, 0.3, 2);
    std::vector<PartitionFn> family;
    for (double kappa : {2.0, 4.0})
        for (double mu : {0.0, 1.0, -0.7}) family.push_back(PartitionFn::spiral(kappa, mu));
    family.push_back(PartitionFn::cr_weighted(3.0, 0.4));
    family.push_back(PartitionFn::cr_weighted(4.0, 0.125));
    for (const PartitionFn& pf : family) {
        const double claimed = pf.is_spiral() ? std::exp(two_pi * pf.mu() / pf.kappa()) : 1.0;
        lam_err = std::max(lam_err, std::fabs(interchange_constant(pf) - claimed) / claimed);
        for (const auto& [t1, t2] : pts) {
            const double ratio = eval_Z(pf, t2, t1 + two_pi) / eval_Z(pf, t1, t2);
            lam_err = std::max(lam_err, std::fabs(ratio - claimed) / claimed);
        }
    }
    const bool pass = z_sym <= 3.0 && z_side <= 3.0 && lam_err < 1e-8;
    return {pass, fmt("Phi(u) vs Phi(1-u): %.5f vs %.5f", a.mean, b.mean) + fmt(" z=%.2f; ", z_sym) +
                      fmt("P(left) at pi %.5f z=%.2f; ", side.left.mean, z_side) +
                      fmt("interchange constant rel err %.2g", lam_err)};
}

Outcome pair_sampler() {
    bool pass = true;
    std::string d;
    const double eps = 0.01;
    const std::size_t n_ks = 2000;
    for (double mu : {0.0, 1.0}) {
        std::vector<double> pair_inc, direct_inc;
        for (std::size_t i = 0; i < n_ks; ++i) {
            PairOptions opt;
            opt.record_traces = false;
            const PairSample s = sample_two_sided_pair(2.0, mu, 0.0, pi / 2.0, eps, eps, RngSpec{kSeed, i}, opt);
            pair_inc.push_back(s.turns.front().theta1 - 0.0);
            const DrivingPath p = sample_kappa_mu_rho_driver(SleParams(2.0, mu, 2.0), 0.0, pi / 2.0, eps, eps,
                                                             RngSpec{kSeed + 1, i});
            direct_inc.push_back(p.xi.back() - p.xi.front());
        }
        const double D = ks_statistic(pair_inc, direct_inc);
        const double crit = ks_critical_1pct(n_ks, n_ks);
        pass = pass && D < crit;
        d += fmt("marginal mu=%g KS %.4f", mu, D) + fmt(" (crit %.4f); ", crit);
    }
    for (double mu : {0.0, 1.0}) {
        std::vector<double> coarse, fine;
        for (std::size_t i = 0; i < 500; ++i) {
            PairOptions opt;
            opt.record_traces = false;
            const PairSample a = sample_two_sided_pair(2.0, mu, 0.0, pi / 2.0, 0.5, 0.02, RngSpec{kSeed, i}, opt);
            const PairSample b = sample_two_sided_pair(2.0, mu, 0.0, pi / 2.0, 0.5, 0.01, RngSpec{kSeed, i}, opt);
            coarse.push_back(a.state.theta2_t - a.state.theta1_t);
            fine.push_back(b.state.theta2_t - b.state.theta1_t);
        }
        const double D = ks_statistic(coarse, fine);
        const double crit = ks_critical_1pct(500, 500);
        pass = pass && D < crit;
        d += fmt("eps halving mu=%g KS %.4f", mu, D) + fmt(" (crit %.4f); ", crit);
    }
    const PairSample geo = sample_two_sided_pair(0.0, 0.0, 0.0, pi, 1.0, 0.01, RngSpec{});
    double axis = 0.0;
    for (const CurveTrace* tr : {&geo.curve1, &geo.curve2})
        for (const complex& z : tr->points) axis = std::max(axis, std::fabs(z.imag()));
    pass = pass && axis < 1e-6;
    d += fmt("kappa=0 axis deviation %.2g", axis);
    return {pass, d};
}

Outcome zero_kappa_system() {
    std::vector<std::pair<double, double>> grid;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 5; ++j) {
            const double th1 = -2.0 + 1.3 * i;
            const double gap = 0.4 + (two_pi - 0.8) * j / 4.0;
            grid.emplace_back(th1, th1 + gap);
        }
    double spread = 0.0;
    std::string d;
    for (const ZeroKappaVariant& v : {ZeroKappaVariant::umu(0.0), ZeroKappaVariant::umu(2.0), ZeroKappaVariant::chordal()}) {
        const ConstancyReport r = zero_kappa_constancy(v, grid);
        spread = std::max(spread, r.max_deviation);
        d += v.name() + fmt("(mu=%g) const %.12g; ", v.mu, r.mean);
    }
    const ConstancyReport ch = zero_kappa_constancy(ZeroKappaVariant::chordal(), grid);
    const double c2 = std::fabs(ch.mean + 3.0);
    d += fmt("max spread %.2g, |C2 + 3| = %.2g", spread, c2);
    return {spread < 1e-9 && c2 < 1e-9, d};
}

Outcome semiclassical_identities() {
    double worst = 0.0;
    const auto pts = random_points(20, 0.1, 3);
    for (double kappa : {0.25, 1.0, 2.0, 4.0, 6.0})
        for (double mu : {-1.0, 0.0, 0.5, 2.0})
            for (const auto& [a, b] : pts)
                worst = std::max(worst, std::fabs(kappa * log_G_mu(kappa, mu, a, b) - u_mu(mu, a, b)));
    const TrendTable t = semiclassical_Z_trend(0.25, {2.0, 1.0, 0.5, 0.25}, pi / 2.0);
    std::string d = fmt("max |kappa log G - U| %.2g; errors", worst);
    for (const auto& r : t.rows) d += fmt(" %.4g", r.error);
    return {worst < 1e-12 && t.strictly_decreasing, d};
}

Outcome engine_invariants() {
    const DrivingPath p = sample_radial_driver(SleParams(2.0), 0.3, 0.2, 0.002, RngSpec{kSeed, 0});
    const LoewnerChain chain = chain_from_path(p);
    const LoewnerChain first = chain.prefix(chain.size() / 2);
    const LoewnerChain second = chain.suffix(chain.size() / 2);
    double comp = 0.0, rot = 0.0;
    const double a = 0.7;
    const LoewnerChain turned = chain.rotated(a);
    for (int i = 0; i < 8; ++i)
        for (int j = 1; j <= 3; ++j) {
            const complex z = std::polar(0.05 * j, two_pi * i / 8.0 + 0.1);
            comp = std::max(comp, std::abs(forward_map(chain, z) - forward_map(second, forward_map(first, z))));
            rot = std::max(rot, std::abs(forward_map(turned, z * detail::unit(a)) - detail::unit(a) * forward_map(chain, z)));
        }
    // Dyadic increments make every partial sum exact.
    LoewnerChain c1, c2;
    RandomStream rs(RngSpec{kSeed, 9});
    double s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double d1 = std::ldexp(std::floor(rs.uniform() * 1024.0) + 1.0, -12);
        const double d2 = std::ldexp(std::floor(rs.uniform() * 1024.0) + 1.0, -12);
        c1.append(d1, rs.normal());
        c2.append(d2, rs.normal());
        s1 += d1;
        s2 += d2;
    }
    const bool additive = concatenate(c1, c2).total_capacity() == s1 + s2 &&
                          concatenate(chain, c1).total_capacity() - chain.total_capacity() == s1;
    LoewnerChain one;
    one.append(0.1, 0.0);
    const double h = 1e-5;
    const complex dg = (forward_map(one, complex(h, 0.0)) - forward_map(one, complex(-h, 0.0))) / (2.0 * h);
    const double gprime = std::abs(dg - std::exp(0.1));
    const bool pass = comp < 1e-9 && rot < 1e-10 && additive && gprime < 1e-6;
    return {pass, fmt("composition %.2g, rotation %.2g, ", comp, rot) + (additive ? "additivity exact, " : "additivity FAILED, ") +
                      fmt("|g'(0) - e^0.1| %.2g", gprime)};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "kappa=4 closed forms", 5.0, closed_forms_kappa4},
        {2, "critical solution and sign dichotomy", 5.0, critical_solution},
        {3, "BPZ constants", 10.0, bpz_constants},
        {4, "commutation bracket", 30.0, commutation_bracket},
        {5, "conformal-radius moments", 180.0, cr_moments},
        {6, "martingale identity", 120.0, martingale_identity},
        {7, "symmetry battery", 120.0, symmetry_battery},
        {8, "pair sampler", 300.0, pair_sampler},
        {9, "kappa=0 system", 1.0, zero_kappa_system},
        {10, "semiclassical identities", 30.0, semiclassical_identities},
        {11, "engine invariants", 10.0, engine_invariants},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool ok = o.pass && in_time;
        if (!ok) ++failures;
        std::printf("%s  [%2d] %s: %s (%.2f s of %.0f s%s)\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                    c.budget_s, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
