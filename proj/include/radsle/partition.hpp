#pragma once

// The two classified partition functions of locally commuting 2-radial SLE
//
//   G_mu(th1, th2) = sin(th21/2)^{2/kappa} exp(mu (th1 + th2) / kappa),
//   Z_alpha(th1, th2) = sin(th21/2)^{(kappa-6)/kappa} phi_alpha(sin(th21/4)^2),
//
// with th21 = th2 - th1 in (0, 2pi), and the exact conformal-radius moment
// built from two hypergeometric solutions.

#include <cmath>
#include <memory>
#include <utility>
#include <variant>

#include "radsle/common.hpp"
#include "radsle/hypergeometric_ivp.hpp"
#include "radsle/special_functions.hpp"

namespace radsle {

/// Threshold alpha_0 = 1 - kappa/8 separating finite and infinite moments.
inline double alpha_critical(double kappa) { return 1.0 - kappa / 8.0; }

struct Spiral {
    double mu = 0.0;
};

struct CrWeighted {
    double alpha = 0.0;
    std::shared_ptr<const HypSolution> hyp;
};

class PartitionFn {
public:
    using Variant = std::variant<Spiral, CrWeighted>;

    static PartitionFn spiral(double kappa, double mu) {
        require(kappa > 0.0 && std::isfinite(kappa), "partition functions need kappa > 0");
        require(std::isfinite(mu), "mu must be finite");
        return PartitionFn(kappa, Spiral{mu});
    }

    static PartitionFn cr_weighted(double kappa, double alpha, const HypGridSpec& grid = {}) {
        require(kappa > 0.0 && kappa < 8.0, "CR-weighted partition function needs kappa in (0, 8)");
        require(alpha < alpha_critical(kappa), "CR-weighted partition function needs alpha < 1 - kappa/8");
        auto hyp = std::make_shared<const HypSolution>(solve_phi_alpha(kappa, alpha, grid));
        return PartitionFn(kappa, CrWeighted{alpha, std::move(hyp)});
    }

    double kappa() const noexcept { return kappa_; }
    const Variant& variant() const noexcept { return variant_; }
    bool is_spiral() const noexcept { return std::holds_alternative<Spiral>(variant_); }
    double mu() const { return std::get<Spiral>(variant_).mu; }
    double alpha() const { return std::get<CrWeighted>(variant_).alpha; }
    const HypSolution& hyp() const { return *std::get<CrWeighted>(variant_).hyp; }

private:
    PartitionFn(double kappa, Variant v) : kappa_(kappa), variant_(std::move(v)) {}

    double kappa_;
    Variant variant_;
};

namespace detail {

inline double checked_gap(double th1, double th2) {
    if (!ordered_pair(th1, th2)) fail(ErrorKind::Domain, "partition functions need th1 < th2 < th1 + 2pi");
    return th2 - th1;
}

inline double u_of_gap(double gap) {
    const double s = std::sin(0.25 * gap);
    return s * s;
}

} // namespace detail

inline double log_G_mu(double kappa, double mu, double th1, double th2) {
    require(kappa > 0.0, "G_mu needs kappa > 0");
    const double gap = detail::checked_gap(th1, th2);
    return (2.0 * std::log(std::sin(0.5 * gap)) + mu * (th1 + th2)) / kappa;
}

inline double eval_G_mu(double kappa, double mu, double th1, double th2) {
    return std::exp(log_G_mu(kappa, mu, th1, th2));
}

/// log Z_alpha as a function of the gap only.
inline double log_Z_alpha_gap(const PartitionFn& pf, double gap) {
    const double kappa = pf.kappa();
    const HypSolution& hyp = pf.hyp();
    const double phi = hyp(detail::u_of_gap(gap));
    if (!(phi > 0.0)) fail(ErrorKind::Domain, "phi_alpha is not positive at this angle");
    return (kappa - 6.0) / kappa * std::log(std::sin(0.5 * gap)) + std::log(phi);
}

inline double eval_Z_alpha(const PartitionFn& pf, double th1, double th2) {
    require(!pf.is_spiral(), "eval_Z_alpha needs a CR-weighted partition function");
    const double gap = detail::checked_gap(th1, th2);
    const double kappa = pf.kappa();
    return std::pow(std::sin(0.5 * gap), (kappa - 6.0) / kappa) * pf.hyp()(detail::u_of_gap(gap));
}

inline double log_Z(const PartitionFn& pf, double th1, double th2) {
    if (pf.is_spiral()) return log_G_mu(pf.kappa(), pf.mu(), th1, th2);
    return log_Z_alpha_gap(pf, detail::checked_gap(th1, th2));
}

inline double eval_Z(const PartitionFn& pf, double th1, double th2) {
    if (pf.is_spiral()) return eval_G_mu(pf.kappa(), pf.mu(), th1, th2);
    return eval_Z_alpha(pf, th1, th2);
}

/// d/d(gap) log Z_alpha, from the series derivative of phi.
inline double dlog_Z_alpha_dgap(const PartitionFn& pf, double gap) {
    const double kappa = pf.kappa();
    const PhiValue v = pf.hyp().evaluate(detail::u_of_gap(gap));
    return (kappa - 6.0) / (2.0 * kappa) * cot(0.5 * gap) + v.dphi / v.phi * 0.25 * std::sin(0.5 * gap);
}

/// b_j = kappa d_j log Z.
inline double drift_b(const PartitionFn& pf, int j, double th1, double th2) {
    require(j == 1 || j == 2, "drift index must be 1 or 2");
    const double gap = detail::checked_gap(th1, th2);
    if (pf.is_spiral()) {
        const double c = cot(0.5 * gap);
        return (j == 1 ? -c : c) + pf.mu();
    }
    const double g = pf.kappa() * dlog_Z_alpha_dgap(pf, gap);
    return j == 1 ? -g : g;
}

/// lambda with lambda Z(th1, th2) = Z(th2, th1 + 2pi).
inline double interchange_constant(const PartitionFn& pf) {
    if (pf.is_spiral()) return std::exp(two_pi * pf.mu() / pf.kappa());
    return 1.0;
}

/// Exact moment E_theta[CR^{-alpha}] as a function of u = sin(theta/4)^2
/// for chordal SLE_kappa viewed radially. Construction validates the
/// parameters and precomputes the endpoint constants.
class CrMomentExact {
public:
    CrMomentExact(double kappa, double alpha) : kappa_(kappa), alpha_(alpha) {
        require(kappa > 0.0 && kappa < 8.0, "cr_moment_exact needs kappa in (0, 8)");
        require(std::isfinite(alpha) && alpha >= 0.0, "cr_moment_exact needs alpha >= 0");
        if (alpha >= alpha_critical(kappa)) fail(ErrorKind::Divergent, "moment is infinite for alpha >= 1 - kappa/8");
        const double r = 1.0 - 4.0 / kappa;
        C_ = 1.5 - 4.0 / kappa;
        if (std::fabs(C_ - std::round(C_)) < 1e-9)
            fail(ErrorKind::ParameterDegenerate, "C = 3/2 - 4/kappa is an integer; perturb kappa");
        const double root = std::sqrt(r * r + 8.0 * alpha / kappa);
        A_ = r + root;
        B_ = r - root;
        f1_at_1_ = std::cos(pi * root) / std::cos(pi * r);
        // Gauss summation for f2(1); C - A - B = 1 - C > 0.
        const double s = C_ - A_ - B_;
        f2_at_1_ = gamma_sign(2.0 - C_) * std::exp(log_gamma(2.0 - C_) + log_gamma(s)) * rgamma(1.0 - A_) *
                   rgamma(1.0 - B_);
        weight_ = (1.0 - f1_at_1_) / f2_at_1_;
    }

    double operator()(double u) const {
        require(u > 0.0 && u < 1.0, "cr_moment_exact needs u in (0, 1)");
        if (alpha_ == 0.0) return 1.0;
        const double f1 = hyp2f1(A_, B_, C_, u);
        const double f2 = std::pow(u, 1.0 - C_) * hyp2f1(1.0 + A_ - C_, 1.0 + B_ - C_, 2.0 - C_, u);
        return f1 + weight_ * f2;
    }

    double A() const { return A_; }
    double B() const { return B_; }
    double C() const { return C_; }
    double f1_at_1() const { return f1_at_1_; }
    double f2_at_1() const { return f2_at_1_; }

private:
    double kappa_;
    double alpha_;
    double A_ = 0.0, B_ = 0.0, C_ = 0.0;
    double f1_at_1_ = 1.0, f2_at_1_ = 1.0, weight_ = 0.0;
};

inline double cr_moment_exact(double kappa, double alpha, double u) { return CrMomentExact(kappa, alpha)(u); }

} // namespace radsle
