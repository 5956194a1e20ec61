#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "radsle/common.hpp"

namespace radsle {

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// log Gamma(x) for x >= 0.5 by the Lanczos approximation.
inline double lanczos_log_gamma(double x) {
    x -= 1.0;
    double sum = lanczos_coef[0];
    for (std::size_t k = 1; k < lanczos_coef.size(); ++k) sum += lanczos_coef[k] / (x + static_cast<double>(k));
    const double t = x + lanczos_g + 0.5;
    return 0.5 * std::log(two_pi) + (x + 0.5) * std::log(t) - t + std::log(sum);
}

} // namespace detail

/// log|Gamma(x)|. Reflection covers x < 1/2; poles raise DomainError.
inline double log_gamma(double x) {
    require(std::isfinite(x), "log_gamma needs a finite argument");
    if (detail::is_nonpositive_integer(x)) fail(ErrorKind::Domain, "log_gamma pole at a nonpositive integer");
    if (x == 1.0 || x == 2.0) return 0.0;
    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        const double s = std::sin(pi * x);
        return std::log(pi / std::fabs(s)) - detail::lanczos_log_gamma(1.0 - x);
    }
    return detail::lanczos_log_gamma(x);
}

/// Sign of Gamma(x) away from its poles.
inline double gamma_sign(double x) {
    if (x > 0.0) return 1.0;
    if (detail::is_nonpositive_integer(x)) fail(ErrorKind::Domain, "gamma_sign at a pole");
    return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
}

/// 1/Gamma(x), zero at the poles.
inline double rgamma(double x) {
    if (detail::is_nonpositive_integer(x)) return 0.0;
    return gamma_sign(x) * std::exp(-log_gamma(x));
}

namespace detail {

inline double gauss_series(double a, double b, double c, double u, long max_terms = 200000) {
    double term = 1.0;
    double sum = 1.0;
    int small = 0;
    for (long n = 0; n < max_terms; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * u;
        sum += term;
        if (term == 0.0) return sum;
        if (std::fabs(term) <= 1e-17 * std::fabs(sum)) {
            if (++small >= 3) return sum;
        } else {
            small = 0;
        }
        if (!std::isfinite(sum)) break;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "2F1(%.17g, %.17g; %.17g; %.17g): last term %.3e, partial sum %.17g", a, b, c,
                  u, term, sum);
    fail(ErrorKind::SeriesNonConvergent, buf);
}

} // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; u) for u in [0, 1).
///
/// For u > 1/2 the 1-u connection formula is used unless c-a-b is (nearly)
/// an integer, in which case the direct series is summed.
inline double hyp2f1(double a, double b, double c, double u) {
    require(u >= 0.0 && u < 1.0, "hyp2f1 needs u in [0, 1)");
    if (detail::is_nonpositive_integer(c)) fail(ErrorKind::Domain, "hyp2f1 needs c not a nonpositive integer");
    if (u == 0.0) return 1.0;
    const double s = c - a - b;
    const bool terminating = detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b);
    if (u <= 0.5 || terminating || std::fabs(s - std::round(s)) < 1e-9) return detail::gauss_series(a, b, c, u);

    const double v = 1.0 - u;
    const double lg_c = log_gamma(c);
    const double sg_c = gamma_sign(c);
    // Gamma(c) Gamma(s) / (Gamma(c-a) Gamma(c-b))
    const double k1 = sg_c * gamma_sign(s) * std::exp(lg_c + log_gamma(s)) * rgamma(c - a) * rgamma(c - b);
    // Gamma(c) Gamma(-s) / (Gamma(a) Gamma(b))
    const double k2 = sg_c * gamma_sign(-s) * std::exp(lg_c + log_gamma(-s)) * rgamma(a) * rgamma(b);
    double out = 0.0;
    if (k1 != 0.0) out += k1 * detail::gauss_series(a, b, 1.0 - s, v);
    if (k2 != 0.0) out += k2 * std::pow(v, s) * detail::gauss_series(c - a, c - b, 1.0 + s, v);
    return out;
}

} // namespace radsle
