#include "prandtl/cli/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "prandtl/core/outer_flow.hpp"
#include "prandtl/core/wall_profile.hpp"
#include "prandtl/error.hpp"
#include "prandtl/phys/blasius.hpp"
#include "prandtl/vm/march.hpp"

namespace prandtl::cli {

namespace {

// Manufactured solutions, both linear in x so that only the lag of the coefficient and the
// psi stencil contribute to the error.
double exact(ManufacturedCase::Solution s, double x, double psi) {
    const double ax = 1.0 - x / 4.0;
    return s == ManufacturedCase::Solution::quadratic ? ax * (psi + 0.5 * psi * psi) : ax * std::expm1(psi);
}

double forcing(ManufacturedCase::Solution s, double x, double psi) {
    const double ax = 1.0 - x / 4.0;
    const double space = s == ManufacturedCase::Solution::quadratic ? psi + 0.5 * psi * psi : std::expm1(psi);
    const double curv = s == ManufacturedCase::Solution::quadratic ? ax : ax * std::exp(psi);
    return -0.25 * space - std::sqrt(ax * space) * curv;
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

}  // namespace

double manufactured_error(const ManufacturedCase& c) {
    auto grid = std::make_shared<const vm::PsiGrid>(1.0, c.intervals, c.grading);
    vm::VMState s;
    s.grid = grid;
    s.w.resize(grid->size());
    for (std::size_t j = 0; j < grid->size(); ++j) s.w[j] = exact(c.solution, 0.0, (*grid)[j]);
    const auto flow = core::OuterFlow::with_inflow_speed(core::PressureSpec::constant(0.0), 1.0);
    vm::StepOptions opt;
    opt.mode = c.picard ? vm::StepMode::picard : vm::StepMode::semi_implicit;
    opt.picard_max = 60;
    opt.picard_tol = 1e-14;
    opt.check_invariants = false;
    opt.operator_scale = c.operator_scale;
    const auto sol = c.solution;
    opt.forcing = [sol](double x, double psi) { return forcing(sol, x, psi); };
    opt.top_value = [sol](double x) { return exact(sol, x, 1.0); };
    const auto steps = static_cast<std::size_t>(std::llround(c.x_end / c.dx));
    for (std::size_t n = 0; n < steps; ++n) {
        auto out = vm::march_step(s, flow, c.dx, opt);
        if (out.status == vm::StepStatus::breakdown) throw NumericalError("manufactured case: " + out.reason);
        s = std::move(out.state);
    }
    double err = 0.0;
    for (std::size_t j = 0; j < grid->size(); ++j) err = std::max(err, std::abs(s.w[j] - exact(sol, s.x, (*grid)[j])));
    return err;
}

double stationarity_drift(std::size_t intervals, double grading, std::size_t steps, double dx, double operator_scale) {
    const double psi_max = 4.0;
    auto grid = std::make_shared<const vm::PsiGrid>(psi_max, intervals, grading);
    vm::VMState s;
    s.grid = grid;
    s.w.assign(grid->nodes().begin(), grid->nodes().end());
    const auto flow = core::OuterFlow::with_inflow_speed(core::PressureSpec::constant(0.0), std::sqrt(psi_max));
    vm::StepOptions opt;
    opt.pin_top = true;
    opt.operator_scale = operator_scale;
    double worst = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
        auto out = vm::march_step(s, flow, dx, opt);
        if (!out.accepted()) throw NumericalError("stationarity step rejected: " + out.reason);
        for (std::size_t j = 0; j < s.w.size(); ++j) worst = std::max(worst, std::abs(out.state.w[j] - s.w[j]));
        s = std::move(out.state);
    }
    return worst / psi_max;
}

std::vector<BatteryCheck> run_validation_battery(const BatteryOptions& o) {
    std::vector<BatteryCheck> out;
    auto add = [&](std::string name, bool ok, double m, double t, std::string d) {
        out.push_back({std::move(name), ok, m, t, std::move(d)});
    };
    auto guarded = [&](const std::string& name, double threshold, auto&& body) {
        try {
            body();
        } catch (const Error& e) {
            add(name, false, std::nan(""), threshold, e.what());
        }
    };

    guarded("stationarity", 1e-12, [&] {
        const double d = stationarity_drift(128, 2.0, o.stationarity_steps, 1e-2, o.operator_scale);
        add("stationarity", d < 1e-12, d, 1e-12, fmt("max per-step change / psi_max over %.0f steps", double(o.stationarity_steps)));
    });

    guarded("manufactured_x_order", 0.9, [&] {
        ManufacturedCase c;
        c.operator_scale = o.operator_scale;
        std::vector<double> e;
        for (double dx : {0.1, 0.05, 0.025}) {
            c.dx = dx;
            e.push_back(manufactured_error(c));
        }
        const double order = std::min(std::log2(e[0] / e[1]), std::log2(e[1] / e[2]));
        add("manufactured_x_order", order >= 0.9, order, 0.9, fmt("errors %.3e -> %.3e", e[0], e[2]));
    });

    guarded("manufactured_psi_exactness", 1e-11, [&] {
        ManufacturedCase c;
        c.picard = true;
        c.dx = 0.25;
        c.grading = 2.0;
        c.operator_scale = o.operator_scale;
        const double e = manufactured_error(c);
        add("manufactured_psi_exactness", e < 1e-11, e, 1e-11, "quadratic-in-psi solution, converged implicit steps");
    });

    guarded("manufactured_psi_order", 1.8, [&] {
        ManufacturedCase c;
        c.solution = ManufacturedCase::Solution::exponential;
        c.picard = true;
        c.dx = 0.25;
        c.operator_scale = o.operator_scale;
        std::vector<double> e;
        for (std::size_t n : {16u, 32u, 64u}) {
            c.intervals = n;
            e.push_back(manufactured_error(c));
        }
        const double order = std::min(std::log2(e[0] / e[1]), std::log2(e[1] / e[2]));
        add("manufactured_psi_order", order >= 1.8, order, 1.8, fmt("uniform grid, errors %.3e -> %.3e", e[0], e[2]));
    });

    guarded("wall_gradient_exactness", 1e-12, [&] {
        auto grid = std::make_shared<const vm::PsiGrid>(2.0, 50, 3.0);
        vm::VMState s;
        s.grid = grid;
        for (double p : grid->nodes()) s.w.push_back(0.7 * p + 0.3 * p * p);
        const double e = std::abs(vm::wall_gradient(s) - 0.7);
        add("wall_gradient_exactness", e < 1e-12, e, 1e-12, "quadratic w on a graded grid");
    });

    guarded("von_mises_roundtrip", 1e-4, [&] {
        const std::size_t m = 4001;
        std::vector<double> y(m), u(m);
        for (std::size_t i = 0; i < m; ++i) {
            y[i] = 10.0 * static_cast<double>(i) / static_cast<double>(m - 1);
            u[i] = std::tanh(y[i]);
        }
        const auto prof = core::WallProfile::from_samples(y, u);
        auto grid = std::make_shared<const vm::PsiGrid>(8.0, 2048, 2.0);
        const auto back = vm::from_von_mises(vm::to_von_mises(prof, grid), 801);
        double e = 0.0;
        for (std::size_t i = 0; i < back.y.size(); ++i) e = std::max(e, std::abs(back.u[i] - std::tanh(back.y[i])));
        add("von_mises_roundtrip", e < 1e-4, e, 1e-4, "tanh profile through psi and back");
    });

    guarded("blasius_similarity", 0.01, [&] {
        const auto ref = phys::blasius_reference();
        const auto prof = phys::blasius_profile(ref, 1.0, 30.0, 6001);
        const auto flow = core::OuterFlow::with_inflow_speed(core::PressureSpec::constant(0.0), 1.0);
        auto grid = std::make_shared<const vm::PsiGrid>(20.0, 512, 2.0);
        vm::MarchControls mc;
        mc.dx0 = 1e-2;
        mc.x_end = 1.0;
        mc.step.mode = vm::StepMode::picard;
        mc.step.operator_scale = o.operator_scale;
        const auto rec = vm::march_until_separation(vm::to_von_mises(prof, grid), flow, mc);
        double worst = rec.termination == vm::Termination::reached_x_end ? 0.0 : 1.0;
        for (const auto& st : rec.stations)
            worst = std::max(worst, std::abs(st.tau_wall * std::sqrt(st.x + 1.0) / ref.fpp0 - 1.0));
        add("blasius_similarity", worst < 0.01, worst, 0.01,
            fmt("f''(0) = %.10f, termination %s", ref.fpp0) + vm::to_string(rec.termination));
    });
    return out;
}

}  // namespace prandtl::cli
