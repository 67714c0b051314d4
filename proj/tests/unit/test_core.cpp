#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "prandtl/core/outer_flow.hpp"
#include "prandtl/core/separation_criterion.hpp"
#include "prandtl/core/wall_profile.hpp"
#include "prandtl/error.hpp"

using namespace prandtl;
using namespace prandtl::core;

namespace {

WallProfile sampled(double y_max, std::size_t n, double (*f)(double)) {
    std::vector<double> y(n), u(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = y_max * static_cast<double>(i) / static_cast<double>(n - 1);
        u[i] = f(y[i]);
    }
    return WallProfile::from_samples(y, u);
}

double tanh_fn(double y) { return std::tanh(y); }
double y_exp(double y) { return y * std::exp(-y); }
double identity(double y) { return y; }

}  // namespace

TEST(OuterFlow, ConstantGradientSpeed) {
    const auto flow = OuterFlow::adverse(PressureSpec::constant(1.0), 1.0);
    EXPECT_NEAR(flow.speed(0.0), std::sqrt(2.0), 1e-15);
    EXPECT_DOUBLE_EQ(flow.speed(1.0), 0.0);
    EXPECT_THROW((void)flow.speed(1.5), PreconditionError);
}

TEST(OuterFlow, PolynomialBernoulli) {
    const auto flow = OuterFlow::adverse(PressureSpec::polynomial(numerics::Polynomial({0.0, 1.0, 0.5})), 1.0);
    EXPECT_NEAR(flow.speed_squared(0.0), 3.0, 1e-14);
    EXPECT_DOUBLE_EQ(flow.pressure_second_derivative(0.3), 1.0);
}

TEST(OuterFlow, BernoulliAndBoundsOnFineGrid) {
    const numerics::Polynomial p({0.0, 1.0, 0.1});
    const double x0 = 16.0;
    const auto flow = OuterFlow::adverse(PressureSpec::polynomial(p), x0);
    const double c = 1.0, C = 1.0 + 0.2 * x0;
    const double U0sq = flow.speed_squared(0.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = x0 * i / 1000.0;
        // Bernoulli check by independent quadrature of p' (Simpson, exact for quadratics).
        const double mid = 0.5 * (x + x0);
        const double dp_int = (x0 - x) / 6.0 * (flow.pressure_gradient(x) + 4.0 * flow.pressure_gradient(mid) +
                                                flow.pressure_gradient(x0));
        worst = std::max(worst, std::abs(flow.speed_squared(x) - 2.0 * dp_int));
        EXPECT_GE(flow.speed_squared(x), 2.0 * c * (x0 - x) * (1 - 1e-14));
        EXPECT_LE(flow.speed_squared(x), 2.0 * C * (x0 - x) * (1 + 1e-14));
    }
    EXPECT_LT(worst, 1e-10 * U0sq);
}

TEST(OuterFlow, NeutralFlowIsUniform) {
    const auto flow = OuterFlow::with_inflow_speed(PressureSpec::constant(0.0), 1.0);
    for (double x : {0.0, 1.0, 50.0}) EXPECT_DOUBLE_EQ(flow.speed(x), 1.0);
    EXPECT_FALSE(flow.is_adverse());
}

TEST(OuterFlow, RejectsBadInputs) {
    EXPECT_THROW((void)OuterFlow::adverse(PressureSpec::constant(1.0), 0.0), PreconditionError);
    EXPECT_THROW((void)OuterFlow::adverse(PressureSpec::constant(-1.0), 4.0), PreconditionError);
    EXPECT_THROW((void)OuterFlow::adverse(PressureSpec::polynomial(numerics::Polynomial({0.0, 1.0, -0.5})), 4.0),
                 PreconditionError);
}

TEST(WallProfile, TanhNeutralFailsOnlyThirdDerivative) {
    const auto profile = sampled(12.0, 12001, tanh_fn);
    const auto flow = OuterFlow::with_inflow_speed(PressureSpec::constant(0.0), 1.0);
    const auto report = validate_profile(profile, flow);
    for (const auto& c : report.checks) {
        if (c.name == "third_derivative_compatibility") EXPECT_FALSE(c.passed) << c.measured;
        else EXPECT_TRUE(c.passed) << c.name << " " << c.measured;
    }
    EXPECT_NEAR(report.find("third_derivative_compatibility")->measured, 2.0, 1e-3);
}

TEST(WallProfile, TanhAdverseFailsCompatibility) {
    const auto profile = sampled(12.0, 12001, tanh_fn);
    const auto flow = OuterFlow::with_inflow_speed(PressureSpec::constant(1.0), 1.0);
    const auto report = validate_profile(profile, flow);
    EXPECT_FALSE(report.find("second_derivative_compatibility")->passed);
    EXPECT_NEAR(report.find("second_derivative_compatibility")->measured, 1.0, 1e-4);
}

TEST(WallProfile, NonMonotoneDetected) {
    const auto profile = sampled(10.0, 10001, y_exp);
    const auto flow = OuterFlow::with_inflow_speed(PressureSpec::constant(0.0), 1.0);
    const auto* mono = validate_profile(profile, flow).find("monotone");
    ASSERT_NE(mono, nullptr);
    EXPECT_FALSE(mono->passed);
    EXPECT_NE(mono->detail.find("y = 1"), std::string::npos) << mono->detail;
}

TEST(WallProfile, MassInversion) {
    const auto profile = sampled(2.0, 201, identity);
    EXPECT_NEAR(profile.mass_at(1.0), 0.5, 1e-14);
    EXPECT_NEAR(profile.y_of_mass(0.5), 1.0, 1e-12);
    EXPECT_THROW((void)profile.y_of_mass(3.0), InsufficientMass);
}

TEST(WallProfile, BlendedConstruction) {
    const auto flow = OuterFlow::adverse(PressureSpec::constant(1.0), 16.0);
    const auto profile = make_profile(0.1, flow, 5.0);
    EXPECT_NEAR(profile.wall_slope(), 0.1, 1e-12);
    EXPECT_NEAR(profile.taylor_a2(), 1.0, 1e-12);
    EXPECT_NEAR(profile.far_field(), std::sqrt(32.0), 1e-12);
    // The U(0)(1 - chi) term leaves u0'''(0) = 60 U(0) / L^3, so only that check fails.
    const auto report = validate_profile(profile, flow);
    for (const auto& c : report.checks) {
        if (c.name == "third_derivative_compatibility") {
            EXPECT_FALSE(c.passed);
            EXPECT_NEAR(c.measured, 60.0 * std::sqrt(32.0) / 125.0, 1e-6);
        } else {
            EXPECT_TRUE(c.passed) << c.name << " " << c.measured << " " << c.detail;
        }
    }
    for (double u : profile.u()) EXPECT_LE(u, std::sqrt(32.0) + 1e-12);
}

TEST(WallProfile, BlendedRampNeutral) {
    const auto flow = OuterFlow::with_inflow_speed(PressureSpec::constant(0.0), 1.0);
    const double L = 3.0;
    const auto profile = make_profile(1.0 / L, flow, L);
    const auto* mono = validate_profile(profile, flow).find("monotone");
    EXPECT_TRUE(mono->passed) << mono->detail;
    EXPECT_THROW((void)make_profile(0.1, flow, 0.0), PreconditionError);
}

TEST(WallProfile, TaperedConstruction) {
    const auto flow = OuterFlow::adverse(PressureSpec::constant(1.0), 16.0);
    const auto profile = make_tapered_profile(0.1, flow);
    const double l = tapered_profile_length(0.1, 1.0, std::sqrt(32.0));
    EXPECT_NEAR(0.05 * l + l * l / 7.0, std::sqrt(32.0), 1e-12);
    EXPECT_NEAR(profile.value_at(l), std::sqrt(32.0), 1e-12);
    const auto report = validate_profile(profile, flow);
    for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.measured;
    for (double d2 : profile.d2u()) EXPECT_LE(d2, 1.0 + 1e-12);
}

TEST(WallProfile, FileRoundTrip) {
    const auto flow = OuterFlow::adverse(PressureSpec::constant(1.0), 16.0);
    const auto profile = make_tapered_profile(0.1, flow, {0.0, 2001});
    const auto path = std::filesystem::temp_directory_path() / "prandtl_profile_roundtrip.txt";
    profile.save(path);
    const auto back = WallProfile::load(path);
    ASSERT_EQ(back.size(), profile.size());
    for (std::size_t i = 0; i < back.size(); ++i) EXPECT_DOUBLE_EQ(back.u()[i], profile.u()[i]);
    EXPECT_NEAR(back.wall_slope(), 0.1, 1e-6);
    std::filesystem::remove(path);
    EXPECT_THROW((void)WallProfile::load("/nonexistent/profile.txt"), ConfigError);
}

TEST(SeparationCriterion, ThresholdArithmetic) {
    const auto flow = OuterFlow::adverse(PressureSpec::constant(1.0), 16.0);
    // Linear-then-flat profiles with slope s: u = s y until U(0).
    for (double s : {0.1, 0.3}) {
        std::vector<double> y(4001), u(4001);
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = 400.0 * static_cast<double>(i) / 4000.0;
            u[i] = std::min(s * y[i], std::sqrt(32.0));
        }
        const auto profile = WallProfile::from_samples(y, u);
        const auto r = check_separation_condition(profile, flow, 0.5, 2.0, 0.2);
        EXPECT_NEAR(r.psi0, 16.0, 1e-12);
        EXPECT_NEAR(r.threshold, 0.2, 1e-12);
        EXPECT_EQ(r.satisfied, s < 0.2);
    }
}

TEST(SeparationCriterion, InsufficientMass) {
    const auto flow = OuterFlow::adverse(PressureSpec::constant(1.0), 16.0);
    std::vector<double> y(101), u(101);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = 0.01 * static_cast<double>(i) * std::sqrt(20.0);
        u[i] = y[i];
    }  // total mass 10
    const auto profile = WallProfile::from_samples(y, u);
    EXPECT_THROW((void)check_separation_condition(profile, flow, 0.5, 2.0, 0.2), InsufficientMass);
}

TEST(SeparationCriterion, MonotoneInSlope) {
    const auto flow = OuterFlow::adverse(PressureSpec::constant(1.0), 16.0);
    bool seen_true = false;
    for (double s = 0.5; s > 0.005; s *= 0.8) {
        std::vector<double> y(8001), u(8001);
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = 800.0 * static_cast<double>(i) / 8000.0;
            u[i] = std::min(s * y[i], std::sqrt(32.0));
        }
        const auto r = check_separation_condition(WallProfile::from_samples(y, u), flow, 0.5, 2.0, 0.2);
        if (seen_true) EXPECT_TRUE(r.satisfied) << s;
        seen_true = seen_true || r.satisfied;
    }
    EXPECT_TRUE(seen_true);
}
