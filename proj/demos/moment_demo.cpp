// Compares a Monte Carlo estimate of E[CR^-alpha] with the exact value for a
// few starting gaps.

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "radsle/radsle.hpp"

int main(int argc, char** argv) {
    const double kappa = argc > 1 ? std::atof(argv[1]) : 3.0;
    const double alpha = argc > 2 ? std::atof(argv[2]) : 0.3;
    const std::size_t n = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 2000;
    try {
        const radsle::CrMomentExact phi(kappa, alpha);
        std::printf("%8s %12s %12s %10s %8s\n", "theta", "exact", "estimate", "stderr", "z");
        for (double theta : {radsle::pi / 2.0, radsle::pi, 3.0 * radsle::pi / 2.0}) {
            const double u = std::pow(std::sin(0.25 * theta), 2);
            const radsle::McEstimate e = radsle::estimate_cr_moment(kappa, alpha, theta, n, 1e-3, {7, 0});
            const double z = (e.mean - phi(u)) / e.std_error;
            std::printf("%8.4f %12.6f %12.6f %10.6f %+8.2f\n", theta, phi(u), e.mean, e.std_error, z);
        }
    } catch (const radsle::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return radsle::is_domain_error(e.kind()) ? 2 : 3;
    }
    return 0;
}
