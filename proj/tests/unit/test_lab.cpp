#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "prandtl/core/outer_flow.hpp"
#include "prandtl/error.hpp"
#include "prandtl/lab/diagnostics.hpp"
#include "prandtl/lab/fits.hpp"
#include "prandtl/lab/mu.hpp"
#include "prandtl/lab/scan.hpp"
#include "prandtl/numerics/stencils.hpp"

using namespace prandtl;
using namespace prandtl::lab;

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

vm::RunRecord synthetic_record(const std::vector<double>& x, double (*tau)(double)) {
    vm::RunRecord rec;
    rec.termination = vm::Termination::separated;
    for (double xi : x) rec.stations.push_back({xi, tau(xi), 0.0, 0.0, 0.0, 0.0});
    return rec;
}

double quarter(double x) { return std::pow(1.0 - x, 0.25); }
double half(double x) { return std::pow(1.0 - x, 0.5); }
double two_term(double x) { return 2.0 * std::pow(1.0 - x, 0.5) + 0.3 * std::pow(1.0 - x, 0.75); }

vm::VMState state_on(std::shared_ptr<const vm::PsiGrid> g, double x, const std::function<double(double)>& w) {
    vm::VMState s;
    s.grid = g;
    s.x = x;
    for (double p : g->nodes()) s.w.push_back(w(p));
    return s;
}

}  // namespace

TEST(EstimateXstar, QuarterPowerLaw) {
    const auto x = linspace(0.9, 0.999, 200);
    std::vector<double> t;
    for (double xi : x) t.push_back(quarter(xi));
    const auto fit = estimate_xstar(x, t);
    EXPECT_NEAR(fit.xstar, 1.0, 1e-4);
    EXPECT_NEAR(fit.alpha, 0.25, 1e-3);
    EXPECT_NEAR(fit.A, 1.0, 1e-4);
    EXPECT_LT(fit.residual, 1e-8);
}

TEST(EstimateXstar, TwoTermSeriesBiasUpward) {
    // Independent bounded least-squares on the same samples gives alpha = 0.515729, X* = 1.0000470.
    const auto x = linspace(0.9, 0.999, 200);
    std::vector<double> t;
    for (double xi : x) t.push_back(two_term(xi));
    const auto fit = estimate_xstar(x, t);
    EXPECT_GT(fit.alpha, 0.5);
    EXPECT_LT(fit.alpha, 0.6);
    EXPECT_NEAR(fit.alpha, 0.515729, 1e-4);
    EXPECT_NEAR(fit.xstar, 1.0000470, 2e-6);
}

TEST(EstimateXstar, RecordContract) {
    auto rec = synthetic_record(linspace(0.9, 0.999, 100), half);
    const auto fit = estimate_xstar(rec, 0.5);
    EXPECT_NEAR(fit.xstar, 1.0, 1e-6);
    EXPECT_NEAR(fit.alpha, 0.5, 1e-5);
    rec.termination = vm::Termination::reached_x_end;
    EXPECT_THROW((void)estimate_xstar(rec, 0.5), PreconditionError);
    auto short_rec = synthetic_record(linspace(0.9, 0.999, 30), half);
    EXPECT_THROW((void)estimate_xstar(short_rec, 0.5), PreconditionError);
}

TEST(EstimateXstar, FixedAlpha) {
    const auto x = linspace(0.9, 0.999, 100);
    std::vector<double> t;
    for (double xi : x) t.push_back(3.0 * half(xi));
    const auto fit = estimate_xstar_fixed_alpha(x, t, 0.5);
    EXPECT_EQ(fit.method, FitMethod::fixed_alpha);
    EXPECT_NEAR(fit.xstar, 1.0, 1e-8);
    EXPECT_NEAR(fit.A, 3.0, 1e-6);
}

TEST(FitRateExponent, ExactHalfPower) {
    const auto rec = synthetic_record(linspace(0.9, 0.99, 50), half);
    const auto fit = fit_rate_exponent(rec, 1.0, 0.9, 0.99);
    EXPECT_NEAR(fit.alpha, 0.5, 1e-6);
    EXPECT_NEAR(fit.C_estimate, std::pow(0.1, 0.25), 1e-12);
    EXPECT_NEAR(fit.C_estimate, 0.5623, 1e-4);
    EXPECT_THROW((void)fit_rate_exponent(rec, 1.0, 0.991, 0.995), PreconditionError);
    EXPECT_THROW((void)fit_rate_exponent(rec, 1.0, 0.9, 1.0), PreconditionError);
}

TEST(Goldstein, ExactMembers) {
    const auto x = linspace(0.0, 0.99, 60);
    std::vector<double> t1, t2;
    for (double xi : x) {
        const double s = 1.0 - xi;
        t1.push_back(3.0 * std::sqrt(s));
        t2.push_back(3.0 * std::sqrt(s) + 0.5 * std::pow(s, 0.75));
    }
    const auto a = goldstein_fit(x, t1, 1.0, 1, 1e-3, 1.0);
    EXPECT_NEAR(a.coefficients[0], 3.0, 1e-6);
    const auto b = goldstein_fit(x, t1, 1.0, 2, 1e-3, 1.0);
    EXPECT_NEAR(b.coefficients[1], 0.0, 1e-6);
    const auto c = goldstein_fit(x, t2, 1.0, 2, 1e-3, 1.0);
    EXPECT_NEAR(c.coefficients[0], 3.0, 1e-4);
    EXPECT_NEAR(c.coefficients[1], 0.5, 1e-4);
    const auto d = goldstein_fit(x, t2, 1.0, 1, 1e-3, 1.0);
    EXPECT_LE(c.residual, d.residual);
}

TEST(Goldstein, NarrowWindowIsRankDeficient) {
    std::vector<double> x(30, 0.0), t(30, 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 + 1e-14 * static_cast<double>(i);
    EXPECT_THROW((void)goldstein_fit(x, t, 1.0, 2, 0.0, 1.0), NumericalError);
}

TEST(Mu, ConstantAndIncreasingFields) {
    const auto y = linspace(0.0, 2.0, 2001);
    const double s = 0.7;
    std::vector<double> c(y.size(), s), inc;
    for (double yi : y) inc.push_back(s * (1.0 + yi));
    for (const auto* f : {&c, &inc}) {
        const auto r = mu_of_x(y, *f);
        EXPECT_NEAR(r.mu, std::pow(s, 4), 1e-12);
        EXPECT_LT(r.residual, 1e-10);
    }
}

TEST(Mu, DecreasingFieldMatchesBisectionOracle) {
    // Scalar oracle: v = s^4 (1 - v^{1/4}/2)^4 gives v^{1/4} = s / (1 + s/2) = 0.4 for s = 0.5.
    double lo = 0.0, hi = 0.0625;
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (lo + hi);
        if (m - 0.0625 * std::pow(1.0 - std::pow(m, 0.25) / 2.0, 4) < 0.0) lo = m;
        else hi = m;
    }
    const auto y = linspace(0.0, 2.0, 2001);
    std::vector<double> du;
    for (double yi : y) du.push_back(0.5 * (1.0 - yi / 2.0));
    const auto r = mu_of_x(y, du);
    EXPECT_NEAR(r.mu, lo, 1e-11);
    EXPECT_NEAR(r.mu, 0.0256, 1e-11);
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_LE(r.mu, std::pow(du[0], 4));
}

TEST(Mu, RejectsSeparatedProfile) {
    const auto y = linspace(0.0, 1.0, 11);
    std::vector<double> du(11, 0.0);
    EXPECT_THROW((void)mu_of_x(y, du), NumericalError);
}

TEST(Scan, QuarterRateFieldGivesUnitRatios) {
    auto g = std::make_shared<const vm::PsiGrid>(1.0, 512, 3.0);
    std::vector<vm::VMState> snaps;
    for (int k = 2; k <= 14; ++k) {
        const double d = std::pow(2.0, -k - 0.5);
        snaps.push_back(state_on(g, 1.0 - d, [d](double p) { return std::pow(d, 0.25) * p; }));
    }
    const auto rep = scan_quarter_rate(snaps, 1.0);
    for (const auto& r : rep.rows) EXPECT_NEAR(r.ratio, 1.0, 1e-12);
    EXPECT_EQ(rep.windows.size(), 13u);
    EXPECT_NEAR(rep.band, 1.0, 1e-12);
    EXPECT_NEAR(rep.slope, 0.0, 1e-10);
}

TEST(Scan, WallRateFieldDecays) {
    auto g = std::make_shared<const vm::PsiGrid>(1.0, 512, 3.0);
    std::vector<vm::VMState> snaps;
    for (int k = 2; k <= 14; ++k) {
        const double d = std::pow(2.0, -k - 0.5);
        snaps.push_back(state_on(g, 1.0 - d, [d](double p) { return std::sqrt(d) * p; }));
    }
    const auto rep = scan_quarter_rate(snaps, 1.0);
    for (const auto& r : rep.rows) EXPECT_NEAR(r.ratio, std::pow(r.distance, 0.25), 1e-12);
    EXPECT_NEAR(rep.slope, 0.25, 1e-10);
    auto tiny = std::make_shared<const vm::PsiGrid>(1e-3, 64, 2.0);
    std::vector<vm::VMState> bad{state_on(tiny, 0.5, [](double p) { return p; })};
    EXPECT_THROW((void)scan_quarter_rate(bad, 1.0), PreconditionError);
}

TEST(WeightedMass, LinearStationaryState) {
    // w = 2 psi, p' = 0: lhs = 0 and the residual equals -int 2 sqrt(w) ((sqrt w)')^2 phi = -sqrt 2 int psi^{-1/2} phi.
    auto g = std::make_shared<const vm::PsiGrid>(2.0, 4096, 1.0);
    const auto flow = core::OuterFlow::with_inflow_speed(core::PressureSpec::constant(0.0), 1.0);
    const double delta = 1.0;
    std::vector<vm::VMState> snaps{state_on(g, 0.0, [](double p) { return 2.0 * p; }),
                                   state_on(g, 0.01, [](double p) { return 2.0 * p; })};
    const auto rep = weighted_mass_inequality(snaps, flow, delta);
    ASSERT_EQ(rep.rows.size(), 1u);
    EXPECT_NEAR(rep.rows[0].lhs, 0.0, 1e-12);
    // Substitute psi = t^2: int_0^delta psi^{-1/2} phi dpsi = 2 int_0^{sqrt delta} phi(t^2) dt (smooth, Simpson).
    const int m = 20000;
    const double b = std::sqrt(delta);
    double acc = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double t = b * i / m;
        const double wgt = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += wgt * numerics::quintic_cutoff((t * t - 0.5 * delta) / (0.5 * delta));
    }
    const double expected = -std::sqrt(2.0) * 2.0 * acc * b / (3.0 * m);
    EXPECT_LT(rep.rows[0].residual, 0.0);
    EXPECT_NEAR(rep.rows[0].residual, expected, 1e-5 * std::abs(expected));
    EXPECT_THROW((void)weighted_mass_inequality(snaps, flow, 4.0), PreconditionError);
}

TEST(Collapse, ExactlySelfSimilarField) {
    // u = d^{1/2} tanh(y / d^{1/4}): psi = d^{3/4} log cosh(y / d^{1/4}).
    auto g = std::make_shared<const vm::PsiGrid>(0.2, 4096, 2.0);
    std::vector<vm::VMState> snaps;
    for (double lam : {1e-2, 5e-3, 2.5e-3}) {
        snaps.push_back(state_on(g, 1.0 - lam, [lam](double p) {
            const double z = p / std::pow(lam, 0.75);
            const double t = std::tanh(std::acosh(std::exp(z)));
            return lam * t * t;
        }));
    }
    const auto rep = selfsimilar_collapse(snaps, 1.0, {1e-2, 5e-3, 2.5e-3}, 4.0);
    ASSERT_EQ(rep.pair_errors.size(), 2u);
    for (double e : rep.pair_errors) EXPECT_LT(e, 2e-3);
    const auto same = selfsimilar_collapse(snaps, 1.0, {1e-2, 1e-2}, 4.0);
    EXPECT_DOUBLE_EQ(same.pair_errors[0], 0.0);
    EXPECT_THROW((void)selfsimilar_collapse(snaps, 1.0, {2.0}), PreconditionError);
}

TEST(CompareSolvers, IdentityAndMismatch) {
    auto rec = synthetic_record(linspace(0.9, 0.999, 100), half);
    rec.scenario_hash = "s1";
    const auto c = compare_solvers(rec, rec);
    EXPECT_DOUBLE_EQ(c.max_rel_tau_diff, 0.0);
    ASSERT_TRUE(c.xstar_rel_diff.has_value());
    EXPECT_DOUBLE_EQ(*c.xstar_rel_diff, 0.0);
    auto other = rec;
    other.scenario_hash = "s2";
    EXPECT_THROW((void)compare_solvers(rec, other), PreconditionError);
}
