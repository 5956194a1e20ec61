#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "radsle/hypergeometric_ivp.hpp"
#include "radsle/partition.hpp"

using namespace radsle;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Domain;
}

} // namespace

TEST(HypSolution, NormalizationAtCenter) {
    const HypSolution h = solve_phi_alpha(3.0, 0.3);
    EXPECT_EQ(h.u_grid[h.center()], 0.5);
    EXPECT_NEAR(h(0.5), 1.0, 1e-15);
    EXPECT_NEAR(h.evaluate(0.5).dphi, 0.0, 1e-15);
}

TEST(HypSolution, SymmetricAboutOneHalf) {
    const HypSolution h = solve_phi_alpha(2.5, 0.2);
    for (double u : {0.01, 0.1, 0.3, 0.45}) EXPECT_NEAR(h(u), h(1.0 - u), 1e-11);
}

TEST(HypSolution, SatisfiesTheOdeBetweenNodes) {
    const double kappa = 3.0, alpha = 0.4;
    const HypSolution h = solve_phi_alpha(kappa, alpha);
    const double a = (3.0 * kappa - 8.0) / (2.0 * kappa);
    for (double u : {0.0123, 0.2, 0.377, 0.61, 0.95}) {
        const PhiValue v = h.evaluate(u);
        const double res = u * (1.0 - u) * v.d2phi + a * (1.0 - 2.0 * u) * v.dphi + 8.0 * alpha / kappa * v.phi;
        EXPECT_NEAR(res, 0.0, 1e-9) << "u=" << u;
    }
}

TEST(HypSolution, KappaFourCosineForm) {
    for (double alpha : {0.05, 0.32}) {
        const PartitionFn pf = PartitionFn::cr_weighted(4.0, alpha);
        for (double th : {0.3, 1.0, 2.0, pi, 4.4, 6.0}) {
            const double closed = std::pow(std::sin(0.5 * th), -0.5) * std::cos(std::sqrt(alpha / 2.0) * (th - pi));
            EXPECT_NEAR(eval_Z_alpha(pf, 0.0, th), closed, 1e-10);
        }
    }
}

TEST(HypSolution, OutOfGridRaises) {
    const HypSolution h = solve_phi_alpha(3.0, 0.3);
    EXPECT_EQ(kind_of([&] { (void)h(1e-7); }), ErrorKind::OutOfGrid);
}

TEST(HypSolution, SignChangeBeyondGridIsDetectedForKappaSix) {
    const HypSolution h = solve_phi_alpha(6.0, alpha_critical(6.0) + 0.05);
    ASSERT_TRUE(h.sign_change.has_value());
    EXPECT_TRUE(h.sign_change->beyond_grid);
    // Root of the continued solution, from a 30-digit integration.
    EXPECT_NEAR(std::log(h.sign_change->u), -12.672, 0.05);
    EXPECT_NEAR(h.endpoint.limit, -0.178715, 2e-4);
}

TEST(PartitionFn, ValidatesParameters) {
    EXPECT_EQ(kind_of([] { (void)PartitionFn::spiral(0.0, 1.0); }), ErrorKind::Domain);
    EXPECT_EQ(kind_of([] { (void)PartitionFn::cr_weighted(3.0, 0.625); }), ErrorKind::Domain);
    EXPECT_EQ(kind_of([] { (void)PartitionFn::cr_weighted(8.0, 0.0); }), ErrorKind::Domain);
    const PartitionFn pf = PartitionFn::spiral(2.0, 0.0);
    EXPECT_EQ(kind_of([&] { (void)eval_Z(pf, 1.0, 1.0); }), ErrorKind::Domain);
    EXPECT_EQ(kind_of([&] { (void)eval_Z(pf, 0.0, 7.0); }), ErrorKind::Domain);
}

TEST(PartitionFn, SpiralFormulaAndDrifts) {
    const double kappa = 2.0, mu = 0.7;
    const PartitionFn pf = PartitionFn::spiral(kappa, mu);
    const double th1 = 0.3, th2 = 2.1;
    EXPECT_NEAR(eval_Z(pf, th1, th2),
                std::pow(std::sin(0.9), 2.0 / kappa) * std::exp(mu * (th1 + th2) / kappa), 1e-14);
    EXPECT_NEAR(drift_b(pf, 1, th1, th2), -cot(0.9) + mu, 1e-14);
    EXPECT_NEAR(drift_b(pf, 2, th1, th2), cot(0.9) + mu, 1e-14);
}

TEST(PartitionFn, CrWeightedDriftMatchesFiniteDifference) {
    const PartitionFn pf = PartitionFn::cr_weighted(3.0, 0.4);
    for (double gap : {0.7, 2.0, pi, 5.0}) {
        const double h = 1e-4;
        const double fd = (log_Z(pf, 0.0, gap + h) - log_Z(pf, 0.0, gap - h)) / (2.0 * h);
        EXPECT_NEAR(drift_b(pf, 2, 0.0, gap), 3.0 * fd, 1e-7);
        EXPECT_NEAR(drift_b(pf, 1, 0.0, gap), -3.0 * fd, 1e-7);
    }
}

TEST(PartitionFn, NormalizedAtPi) {
    const PartitionFn pf = PartitionFn::cr_weighted(3.0, 0.3);
    EXPECT_NEAR(eval_Z(pf, 1.0, 1.0 + pi), 1.0, 1e-15);
    const PartitionFn z0 = PartitionFn::cr_weighted(2.0, 0.0);
    EXPECT_NEAR(eval_Z(z0, 0.0, pi), 1.0, 1e-15);
}

TEST(PartitionFn, InterchangeConstants) {
    const PartitionFn s = PartitionFn::spiral(2.0, 0.5);
    EXPECT_NEAR(interchange_constant(s), std::exp(two_pi * 0.5 / 2.0), 1e-15);
    EXPECT_NEAR(eval_Z(s, 2.0, 0.5 + two_pi) / eval_Z(s, 0.5, 2.0), interchange_constant(s), 1e-12);
    const PartitionFn c = PartitionFn::cr_weighted(4.0, 0.125);
    EXPECT_EQ(interchange_constant(c), 1.0);
    EXPECT_NEAR(eval_Z(c, 2.0, 0.5 + two_pi), eval_Z(c, 0.5, 2.0), 1e-11);
}

// Reference values of the exact moment from 30-digit evaluations of the
// two-solution hypergeometric combination.
TEST(CrMomentExact, FrozenReferenceValues) {
    const double u8 = std::pow(std::sin(pi / 8.0), 2);
    EXPECT_NEAR(cr_moment_exact(3.0, 0.5, 0.5), 6.6321334810085584, 1e-12);
    EXPECT_NEAR(cr_moment_exact(3.0, 0.3, 0.5), 2.2727346903066452, 1e-12);
    EXPECT_NEAR(cr_moment_exact(6.0, 0.1, 0.5), 1.7296132881608763, 1e-12);
    EXPECT_NEAR(cr_moment_exact(3.0, 0.5, u8), 4.2639716562673396, 1e-12);
    EXPECT_NEAR(cr_moment_exact(3.0, 0.3, u8), 1.7723564885422346, 1e-12);
    EXPECT_NEAR(cr_moment_exact(6.0, 0.1, u8), 1.6533380225502694, 1e-12);
}

TEST(CrMomentExact, SymmetryAndBoundaryValues) {
    const CrMomentExact phi(3.0, 0.3);
    for (double u : {0.02, 0.2, 0.4}) EXPECT_NEAR(phi(u), phi(1.0 - u), 1e-11);
    EXPECT_NEAR(phi(1e-9), 1.0, 1e-3);
    EXPECT_NEAR(phi.f1_at_1(), std::tgamma(phi.C()) * std::tgamma(phi.C() - phi.A() - phi.B()) /
                                   (std::tgamma(phi.C() - phi.A()) * std::tgamma(phi.C() - phi.B())),
                1e-12);
    EXPECT_EQ(cr_moment_exact(3.0, 0.0, 0.3), 1.0);
}

TEST(CrMomentExact, RatioMatchesOdeSolution) {
    const CrMomentExact phi(3.0, 0.3);
    const HypSolution h = solve_phi_alpha(3.0, 0.3);
    for (double u : {0.05, 0.27, 0.5, 0.81, 0.95}) EXPECT_NEAR(phi(u) / phi(0.5), h(u), 1e-10);
}

TEST(CrMomentExact, ErrorKinds) {
    EXPECT_EQ(kind_of([] { (void)CrMomentExact(3.0, 0.625); }), ErrorKind::Divergent);
    EXPECT_EQ(kind_of([] { (void)CrMomentExact(8.0 / 3.0, 0.1); }), ErrorKind::ParameterDegenerate);
    EXPECT_EQ(kind_of([] { (void)CrMomentExact(9.0, 0.1); }), ErrorKind::Domain);
    EXPECT_EQ(kind_of([] { (void)cr_moment_exact(3.0, 0.2, 1.0); }), ErrorKind::Domain);
}
