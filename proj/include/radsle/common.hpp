#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace radsle {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Failure categories. The CLI maps domain-type errors to exit code 2 and
/// numerical aborts to exit code 3.
enum class ErrorKind {
    Domain,
    ParameterDegenerate,
    Divergent,
    SingularGap,
    PointSwallowed,
    NumericalBlowup,
    GapCollapse,
    PathAbort,
    MaxTimeExceeded,
    StiffnessFailure,
    OutOfGrid,
    SeriesNonConvergent,
    StencilOutOfDomain,
};

inline constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::ParameterDegenerate: return "ParameterDegenerate";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::SingularGap: return "SingularGap";
    case ErrorKind::PointSwallowed: return "PointSwallowed";
    case ErrorKind::NumericalBlowup: return "NumericalBlowup";
    case ErrorKind::GapCollapse: return "GapCollapse";
    case ErrorKind::PathAbort: return "PathAbort";
    case ErrorKind::MaxTimeExceeded: return "MaxTimeExceeded";
    case ErrorKind::StiffnessFailure: return "StiffnessFailure";
    case ErrorKind::OutOfGrid: return "OutOfGrid";
    case ErrorKind::SeriesNonConvergent: return "SeriesNonConvergent";
    case ErrorKind::StencilOutOfDomain: return "StencilOutOfDomain";
    }
    return "Unknown";
}

/// True for errors caused by invalid input parameters rather than by a
/// numerical failure during a run.
inline constexpr bool is_domain_error(ErrorKind kind) {
    return kind == ErrorKind::Domain || kind == ErrorKind::ParameterDegenerate ||
           kind == ErrorKind::Divergent;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what) {
    if (!condition) fail(ErrorKind::Domain, what);
}

// Geometric tolerances shared by the Loewner engine and the drivers.
inline constexpr double tol_gap = 1e-8;
inline constexpr double tol_swallow = 1e-8;
inline constexpr double tol_geom = 1e-7;

/// Reduces an angle difference into [0, 2pi). Only for trig-free bookkeeping;
/// stored angles stay on their continuous branch.
inline double wrap_two_pi(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

inline double cot(double x) { return std::cos(x) / std::sin(x); }

/// Checks th1 < th2 < th1 + 2pi, the domain of every partition function.
inline bool ordered_pair(double th1, double th2) { return th1 < th2 && th2 < th1 + two_pi; }

} // namespace radsle
