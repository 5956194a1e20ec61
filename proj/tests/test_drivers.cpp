#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "radsle/drivers.hpp"

using namespace radsle;

TEST(SleParams, ValidatesAndDerivedWeights) {
    EXPECT_THROW(SleParams(-1.0), Error);
    EXPECT_THROW(SleParams(2.0, NAN), Error);
    const SleParams p(3.0);
    EXPECT_DOUBLE_EQ(p.h(), 0.5);
    EXPECT_DOUBLE_EQ(p.h_tilde(), 3.0 / 24.0);
    EXPECT_THROW((void)SleParams(0.0).h(), Error);
}

TEST(TimeGrid, EndsExactlyAtT) {
    const auto g = detail::time_grid(1.0, 0.3);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_EQ(detail::time_grid(0.0, 0.1).size(), 1u);
    EXPECT_EQ(detail::time_grid(1.0, 0.1).size(), 11u);
}

TEST(RadialDriver, ZeroKappaIsLinearDrift) {
    const DrivingPath p = sample_radial_driver(SleParams(0.0, 1.5), 0.2, 1.0, 0.01, RngSpec{1, 0});
    for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(p.xi[k], 0.2 + 1.5 * p.times[k], 1e-13);
    EXPECT_FALSE(p.has_v());
}

TEST(RadialDriver, IncrementVarianceIsKappaDt) {
    const double kappa = 2.5, dt = 0.01;
    const DrivingPath p = sample_radial_driver(SleParams(kappa), 0.0, 100.0, dt, RngSpec{2, 0});
    double s2 = 0.0;
    for (std::size_t k = 1; k < p.size(); ++k) s2 += std::pow(p.xi[k] - p.xi[k - 1], 2);
    const double n = static_cast<double>(p.size() - 1);
    EXPECT_NEAR(s2 / n, kappa * dt, 5.0 * kappa * dt * std::sqrt(2.0 / n));
}

TEST(RadialDriver, ChainUsesRightEndpoints) {
    const DrivingPath p = sample_radial_driver(SleParams(2.0), 0.0, 0.05, 0.01, RngSpec{3, 0});
    const LoewnerChain c = chain_from_path(p);
    ASSERT_EQ(c.size(), p.size() - 1);
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(c.steps()[k].xi, p.xi[k + 1]);
}

TEST(KappaRho, SymmetricZeroNoiseStaysPut) {
    const DrivingPath p = sample_kappa_mu_rho_driver(SleParams(0.0, 0.0, 2.0), 0.0, pi, 1.0, 0.01, RngSpec{});
    for (std::size_t k = 0; k < p.size(); ++k) {
        EXPECT_NEAR(p.xi[k], 0.0, 1e-15);
        EXPECT_NEAR(p.v[k], pi, 1e-15);
    }
}

TEST(KappaRho, ForcePointTracksBoundaryFlowOfChain) {
    LoewnerChain chain;
    const DrivingPath p = sample_kappa_mu_rho_driver(SleParams(2.0, 0.3, 2.0), 0.0, 2.0, 0.5, 0.01, RngSpec{4, 0}, &chain);
    // Flowing the initial force point through the recorded chain reproduces V.
    const complex w = forward_map(chain, detail::unit(2.0));
    EXPECT_NEAR(std::remainder(std::arg(w) - p.v.back(), two_pi), 0.0, 1e-9);
    for (std::size_t k = 0; k < p.size(); ++k) {
        EXPECT_GT(p.v[k] - p.xi[k], 0.0);
        EXPECT_LT(p.v[k] - p.xi[k], two_pi);
    }
}

TEST(KappaRho, PlacesForcePointOnUpperBranch) {
    KappaRhoStepper s(SleParams(2.0, 0.0, 2.0), 1.0, 0.5, RngSpec{});
    EXPECT_NEAR(s.v(), 0.5 + two_pi, 1e-15);
    EXPECT_NEAR(s.v_offset(), two_pi, 1e-15);
    s.restart(0.0, 1.0);
    EXPECT_EQ(s.v(), 1.0);
    EXPECT_EQ(s.v_offset(), 0.0);
}

TEST(KappaRho, RejectsCoincidentPoints) {
    EXPECT_THROW(KappaRhoStepper(SleParams(2.0, 0.0, 2.0), 1.0, 1.0 + two_pi, RngSpec{}), Error);
}

TEST(KappaRho, ReproducibleForFixedSeed) {
    const auto a = sample_kappa_mu_rho_driver(SleParams(3.0, 0.5, 1.0), 0.0, 1.0, 0.5, 0.01, RngSpec{9, 3});
    const auto b = sample_kappa_mu_rho_driver(SleParams(3.0, 0.5, 1.0), 0.0, 1.0, 0.5, 0.01, RngSpec{9, 3});
    EXPECT_EQ(a.xi, b.xi);
    EXPECT_EQ(a.v, b.v);
}

TEST(GapProcess, AbsorbsOnEitherSide) {
    int zero = 0, two = 0;
    for (std::uint64_t i = 0; i < 400; ++i) {
        const GapRun r = sample_gap_process(3.0, pi, 1e-3, RngSpec{5, i});
        EXPECT_TRUE(r.absorbed);
        EXPECT_GT(r.T, 0.0);
        (r.side == Side::Zero ? zero : two)++;
        EXPECT_EQ(r.theta_end, r.side == Side::Zero ? 0.0 : two_pi);
    }
    EXPECT_GT(zero, 150);
    EXPECT_GT(two, 150);
}

TEST(GapProcess, StopTimeFreezesUnabsorbedPaths) {
    GapOptions opt;
    opt.t_stop = 0.05;
    opt.record_path = true;
    const GapRun r = sample_gap_process(3.0, pi, 1e-3, RngSpec{6, 0}, opt);
    if (!r.absorbed) {
        EXPECT_EQ(r.T, 0.05);
        EXPECT_GT(r.theta_end, 0.0);
        EXPECT_LT(r.theta_end, two_pi);
    }
    EXPECT_LE(r.times.back(), 0.05);
}

TEST(GapProcess, TimeCapRaises) {
    GapOptions opt;
    opt.T_cap = 1e-3;
    try {
        (void)sample_gap_process(3.0, pi, 1e-3, RngSpec{7, 0}, opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MaxTimeExceeded);
    }
}

TEST(GapProcess, DomainChecks) {
    EXPECT_THROW((void)sample_gap_process(8.0, pi, 1e-3, RngSpec{}), Error);
    EXPECT_THROW((void)sample_gap_process(3.0, 0.0, 1e-3, RngSpec{}), Error);
    EXPECT_THROW((void)sample_gap_process(3.0, pi, 0.0, RngSpec{}), Error);
}

TEST(GapProcess, RecordedPathIsMonotoneInTime) {
    GapOptions opt;
    opt.record_path = true;
    const GapRun r = sample_gap_process(6.0, 1.0, 1e-3, RngSpec{8, 0}, opt);
    ASSERT_GE(r.times.size(), 2u);
    for (std::size_t k = 1; k < r.times.size(); ++k) EXPECT_GE(r.times[k], r.times[k - 1]);
    EXPECT_EQ(r.times.back(), r.T);
}
