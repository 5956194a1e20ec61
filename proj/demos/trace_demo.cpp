// Samples one radial SLE_kappa curve and a kappa = 0 spiral, and prints both
// traces as CSV on stdout.

#include <cstdio>
#include <cstdlib>
#include <optional>

#include "radsle/radsle.hpp"

int main(int argc, char** argv) {
    const double kappa = argc > 1 ? std::atof(argv[1]) : 2.0;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    try {
        const radsle::CurveTrace random =
            radsle::trace_radial_sle(radsle::SleParams(kappa), 0.0, std::nullopt, 2.0, 1e-3, 201, {seed, 0});
        const radsle::CurveTrace spiral = radsle::trace_zero_radial(1.0, 0.0, radsle::pi, 3.0);
        std::printf("# curve,t,x,y\n");
        for (std::size_t k = 0; k < random.size(); ++k)
            std::printf("random,%.17g,%.17g,%.17g\n", random.times[k], random.points[k].real(), random.points[k].imag());
        for (std::size_t k = 0; k < spiral.size(); ++k)
            std::printf("spiral,%.17g,%.17g,%.17g\n", spiral.times[k], spiral.points[k].real(), spiral.points[k].imag());
        std::fprintf(stderr, "spiral winding %.6f rad\n", radsle::winding_angle(spiral));
    } catch (const radsle::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return radsle::is_domain_error(e.kind()) ? 2 : 3;
    }
    return 0;
}
