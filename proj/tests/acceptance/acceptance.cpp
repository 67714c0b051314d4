// Acceptance driver: one PASS/FAIL line per criterion; `--only k` runs criterion k alone.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "prandtl/cli/scenario.hpp"
#include "prandtl/core/outer_flow.hpp"
#include "prandtl/core/separation_criterion.hpp"
#include "prandtl/lab/fits.hpp"
#include "prandtl/lab/mu.hpp"
#include "prandtl/phys/blasius.hpp"
#include "prandtl/phys/solver.hpp"
#include "prandtl/vm/march.hpp"

using namespace prandtl;
using json = nlohmann::json;

namespace {

// Frozen from an independent high-accuracy shooting computation.
constexpr double kBlasiusFpp0 = 0.33205733621519630;

struct Verdict {
    bool pass = true;
    std::vector<std::string> lines;
    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void note(const std::string& what) { lines.push_back("     " + what); }
};

std::string f(const char* fmt, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- shared separated runs -------------------------------------------------------------

enum class Pressure { constant, quadratic };

cli::ScenarioConfig separation_config(Pressure p, double slope, std::size_t N, bool with_phys) {
    cli::ScenarioConfig c;
    c.label = "acceptance";
    if (p == Pressure::quadratic) {
        c.flow.mode = cli::FlowSettings::Mode::polynomial;
        c.flow.pressure_coefficients = {0.0, 1.0, 0.1};
    }
    c.flow.x0 = 16.0;
    c.profile.mode = cli::ProfileSettings::Mode::tapered;
    c.profile.slope = slope;
    c.grid.intervals = N;
    c.grid.grading = 5.0;
    c.grid.psi_max = 60.0;
    // X* scales roughly like slope^4; start with a step well below it.
    c.march.dx0 = 0.004 * 0.0266 * std::pow(slope / 0.1, 4);
    c.march.tau_change_max = 0.005;
    c.march.snapshot_stride = 4;
    c.phys.enabled = with_phys;
    c.phys.dx0 = 1e-4;
    c.phys.y_points = 2048;
    return c;
}

const cli::ScenarioResult& separated_run(Pressure p, double slope, std::size_t N, bool with_phys = false) {
    static std::map<std::tuple<int, double, std::size_t, bool>, std::unique_ptr<cli::ScenarioResult>> cache;
    auto& slot = cache[{static_cast<int>(p), slope, N, with_phys}];
    if (!slot) slot = std::make_unique<cli::ScenarioResult>(cli::run_scenario(separation_config(p, slope, N, with_phys), !with_phys));
    return *slot;
}

const std::vector<double> kSlopes{0.05, 0.1, 0.2};

double num(const json& j, const char* key) { return j.contains(key) && j[key].is_number() ? j[key].get<double>() : NAN; }

// ---- 1 ---------------------------------------------------------------------------------

Verdict stationarity() {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    const double psi_max = 4.0;
    auto grid = std::make_shared<const vm::PsiGrid>(psi_max, 512, 2.0);
    vm::VMState s;
    s.grid = grid;
    s.w.assign(grid->nodes().begin(), grid->nodes().end());
    const auto flow = core::OuterFlow::with_inflow_speed(core::PressureSpec::constant(0.0), std::sqrt(psi_max));
    vm::StepOptions opt;
    opt.pin_top = true;
    double worst = 0.0;
    bool all_accepted = true;
    for (int n = 0; n < 10000; ++n) {
        auto out = vm::march_step(s, flow, 1e-3, opt);
        all_accepted = all_accepted && out.accepted();
        for (std::size_t j = 0; j < s.w.size(); ++j) worst = std::max(worst, std::abs(out.state.w[j] - s.w[j]));
        s = std::move(out.state);
    }
    const double t = seconds_since(t0);
    v.check(all_accepted, "10^4 steps accepted (N = 512, graded, pinned top)");
    v.check(worst < 1e-12 * psi_max, f("max per-step change %.3e < 1e-12 psi_max = %.1e", worst, 1e-12 * psi_max));
    v.check(t < 10.0, f("runtime %.2f s < 10 s", t));
    return v;
}

// ---- 2 ---------------------------------------------------------------------------------

struct Manufactured {
    // W = (1 - x/4) q(psi) with q(psi) = psi + psi^2/2 or e^psi - 1.
    bool exponential = false;
    double q(double p) const { return exponential ? std::expm1(p) : p + 0.5 * p * p; }
    double q2(double p) const { return exponential ? std::exp(p) : 1.0; }
    double W(double x, double p) const { return (1.0 - x / 4.0) * q(p); }
    double S(double x, double p) const { return -0.25 * q(p) - std::sqrt(W(x, p)) * (1.0 - x / 4.0) * q2(p); }
};

double mms_error(const Manufactured& m, std::size_t N, double grading, double dx, bool picard) {
    auto grid = std::make_shared<const vm::PsiGrid>(1.0, N, grading);
    vm::VMState s;
    s.grid = grid;
    for (double p : grid->nodes()) s.w.push_back(m.W(0.0, p));
    const auto flow = core::OuterFlow::with_inflow_speed(core::PressureSpec::constant(0.0), 1.0);
    vm::StepOptions opt;
    opt.mode = picard ? vm::StepMode::picard : vm::StepMode::semi_implicit;
    opt.picard_max = 80;
    opt.picard_tol = 1e-15;
    opt.check_invariants = false;
    opt.forcing = [&m](double x, double p) { return m.S(x, p); };
    opt.top_value = [&m](double x) { return m.W(x, 1.0); };
    const int steps = static_cast<int>(std::lround(1.0 / dx));
    for (int n = 0; n < steps; ++n) s = vm::march_step(s, flow, dx, opt).state;
    double e = 0.0;
    for (std::size_t j = 0; j < s.w.size(); ++j) e = std::max(e, std::abs(s.w[j] - m.W(s.x, (*grid)[j])));
    return e;
}

Verdict manufactured() {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    const Manufactured quad{false}, expo{true};

    std::vector<double> ex;
    for (double dx : {0.1, 0.05, 0.025}) ex.push_back(mms_error(quad, 64, 1.0, dx, false));
    const double px = std::min(std::log2(ex[0] / ex[1]), std::log2(ex[1] / ex[2]));
    v.check(px >= 0.9, f("x order %.3f >= 0.9 (errors %.3e %.3e %.3e, lagged coefficient)", px, ex[0], ex[1], ex[2]));

    const double e_exact = mms_error(quad, 32, 1.0, 0.25, true);
    v.check(e_exact < 1e-11, f("quadratic-in-psi W reproduced to %.2e by the psi stencil (uniform grid)", e_exact));

    std::vector<double> ep;
    for (std::size_t N : {16u, 32u, 64u}) ep.push_back(mms_error(expo, N, 1.0, 0.25, true));
    const double pp = std::min(std::log2(ep[0] / ep[1]), std::log2(ep[1] / ep[2]));
    v.check(pp >= 1.8, f("psi order %.3f >= 1.8 on W = (1-x/4)(e^psi-1), uniform (errors %.3e %.3e %.3e)", pp, ep[0],
                         ep[1], ep[2]));
    std::vector<double> eg;
    for (std::size_t N : {16u, 32u, 64u}) eg.push_back(mms_error(expo, N, 2.0, 0.25, true));
    v.note(f("graded grid (gamma = 2) psi order %.3f", std::min(std::log2(eg[0] / eg[1]), std::log2(eg[1] / eg[2]))));
    const double t = seconds_since(t0);
    v.check(t < 60.0, f("runtime %.2f s < 60 s", t));
    return v;
}

// ---- 3 ---------------------------------------------------------------------------------

Verdict blasius() {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    const double x_a = 1.0;
    const auto ref = phys::blasius_reference();
    v.check(std::abs(ref.fpp0 - kBlasiusFpp0) < 1e-9, f("shooting f''(0) = %.12f (frozen %.12f)", ref.fpp0, kBlasiusFpp0));
    const auto prof = phys::blasius_profile(ref, x_a, 30.0, 8001);
    const auto flow = core::OuterFlow::with_inflow_speed(core::PressureSpec::constant(0.0), 1.0);
    auto grid = std::make_shared<const vm::PsiGrid>(20.0, 1024, 2.0);
    vm::MarchControls mc;
    mc.dx0 = 1e-2;
    mc.x_end = 5.0;
    mc.step.mode = vm::StepMode::picard;
    const auto rec = vm::march_until_separation(vm::to_von_mises(prof, grid), flow, mc);

    phys::PhysControls pc;
    pc.dx0 = 1e-2;
    pc.x_end = 5.0;
    pc.y_max = 40.0;
    pc.y_points = 2048;
    const auto prec = phys::run_physical(prof, flow, pc);

    const double tau_oracle = kBlasiusFpp0 / std::sqrt(x_a);
    for (const auto* r : {&rec, &prec}) {
        const std::string who = r->solver;
        v.check(r->termination == vm::Termination::reached_x_end,
                who + " run reaches x_end = 5 (" + vm::to_string(r->termination) + ")");
        double worst = 0.0;
        for (const auto& st : r->stations)
            worst = std::max(worst, std::abs(st.tau_wall * std::sqrt((st.x + x_a) / x_a) / r->tau0() - 1.0));
        v.check(worst < 0.01, who + f(" tau sqrt(x + x_a) constant to %.3e < 1%%", worst));
        const double rel = std::abs(r->tau0() / tau_oracle - 1.0);
        v.check(rel < 0.005, who + f(" inflow tau %.8f vs f''(0)/sqrt(x_a) %.8f: %.2e < 0.5%%", r->tau0(), tau_oracle, rel));
    }
    const double t = seconds_since(t0);
    v.check(t < 60.0, f("runtime %.2f s < 60 s", t));
    return v;
}

// ---- 4 / 10 part a and b -----------------------------------------------------------------

void separation_occurrence(Pressure p, Verdict& v) {
    const double mu = 0.5, B = 4.0;
    for (double s : kSlopes) {
        const auto& r = separated_run(p, s, 2048);
        const auto sc = core::check_separation_condition(r.profile, r.flow, mu, B, core::default_epsilon0(mu, B));
        v.check(sc.satisfied, f("slope %.2f: inflow premise sup u0' on [0, y0 = %.2f] = %.3f <= %.4f", s, sc.y0,
                                sc.slope_sup, sc.threshold));
    }
    v.note("threshold mu^2/8 < 1/8 for every mu in (0,1) at B = 4; sup u0' includes the wall slope");
    for (double s : kSlopes) {
        const auto& a = separated_run(p, s, 1024);
        const auto& b = separated_run(p, s, 2048);
        const bool sep = a.vm.termination == vm::Termination::separated && b.vm.termination == vm::Termination::separated;
        const double xa = num(a.analysis, "xstar"), xb = num(b.analysis, "xstar");
        v.check(sep && xb < 16.0, f("slope %.2f: both runs separated, X* = %.7f < x0 = 16", s, xb));
        const double rel = std::abs(xa / xb - 1.0);
        v.check(rel < 0.01, f("slope %.2f: X* %.7f (N=1024) vs %.7f (N=2048): %.2e < 1%%", s, xa, xb, rel));
    }
}

// ---- 5 / 6 / 7 -------------------------------------------------------------------------

void quarter_bound(Pressure p, Verdict& v) {
    for (double s : kSlopes) {
        const auto& a = separated_run(p, s, 1024).analysis;
        const auto& b = separated_run(p, s, 2048).analysis;
        const double ca = num(a, "C_estimate"), cb = num(b, "C_estimate");
        const double ratio = std::max(ca, cb) / std::min(ca, cb);
        v.check(std::isfinite(ca) && std::isfinite(cb) && ratio < 2.0,
                f("slope %.2f: C %.4f (N=1024), %.4f (N=2048), ratio %.3f < 2", s, ca, cb, ratio));
        const double al = num(b, "alpha");
        v.check(al > 0.25 && al < 1.0, f("slope %.2f: window exponent alpha = %.4f in (0.25, 1)", s, al));
    }
}

void curve_rate(Pressure p, Verdict& v) {
    for (double s : kSlopes) {
        const auto& a = separated_run(p, s, 2048).analysis;
        const std::size_t windows = a["scan_windows"].size();
        const double band = num(a, "scan_band"), slope = num(a, "scan_slope");
        v.check(windows >= 2 && band < 50.0,
                f("slope %.2f: %g dyadic windows, window-max band %.4f < 50", s, double(windows), band));
        v.check(std::abs(slope) <= 0.15, f("slope %.2f: log-log trend of window maxima %.4f within 0.15", s, slope));
    }
}

void curvature(Pressure p, Verdict& v) {
    for (double s : kSlopes) {
        const auto& a = separated_run(p, s, 1024).analysis;
        const auto& b = separated_run(p, s, 2048).analysis;
        const double ma = num(a, "min_uyy"), mb = num(b, "min_uyy");
        const double ratio = std::max(std::abs(ma), std::abs(mb)) / std::max(1e-300, std::min(std::abs(ma), std::abs(mb)));
        v.check(std::isfinite(ma) && std::isfinite(mb) && ratio < 2.0,
                f("slope %.2f: min u_yy %.4f (N=1024), %.4f (N=2048), ratio %.3f < 2", s, ma, mb, ratio));
        v.check(b["curvature_hypothesis"] == true, f("slope %.2f: inflow satisfies u0'' <= p'(0) = %.1f", s,
                                                     separated_run(p, s, 2048).flow.pressure_gradient(0.0)));
        const double mx = num(b, "max_uyy"), excess = num(b, "max_uyy_excess");
        if (p == Pressure::constant)
            v.check(mx <= 1.05, f("slope %.2f: max u_yy = %.5f <= 1.05", s, mx));
        else
            v.check(excess <= 0.05, f("slope %.2f: max (u_yy - p'(x)) = %.2e <= 0.05 (max u_yy %.5f)", s, excess, mx));
    }
}

// ---- 8 ---------------------------------------------------------------------------------

Verdict weighted_mass() {
    Verdict v;
    for (double s : kSlopes) {
        const auto& r = separated_run(Pressure::constant, s, 2048);
        const auto& wm = r.analysis["weighted_mass"];
        const double res = num(wm, "max_residual"), tol = num(wm, "tolerance");
        const double pairs = num(wm, "pairs");
        v.check(pairs >= 10 && res <= tol,
                f("slope %.2f: max residual %.4e <= %.3e over %g snapshot pairs (delta = 1)", s, res, tol, pairs));
    }
    return v;
}

// ---- 9 ---------------------------------------------------------------------------------

Verdict cross_solver() {
    Verdict v;
    const auto& r = separated_run(Pressure::constant, 0.1, 2048, true);
    v.check(r.phys && r.phys->termination == vm::Termination::separated, "physical-variable run separated");
    const auto& p = r.analysis["phys"];
    const double dtau = num(p, "max_rel_tau_diff"), dx = num(p, "xstar_rel_diff");
    v.check(dtau < 0.02, f("max relative tau difference %.3e < 2%% for x <= %.6f (%g stations)", dtau,
                           num(p, "x_limit"), num(p, "compared")));
    v.check(dx < 0.02, f("X* vm %.7f vs phys %.7f: %.3e < 2%%", num(r.analysis, "xstar"), num(p, "xstar"), dx));
    return v;
}

// ---- 11 --------------------------------------------------------------------------------

Verdict fitting() {
    Verdict v;
    struct Law {
        double A, alpha, xstar;
    };
    for (const Law& law : {Law{0.7, 0.5, 1.0}, Law{1.3, 0.25, 0.03}, Law{0.4, 0.75, 2.0}}) {
        std::vector<double> x, tau;
        for (int i = 0; i < 300; ++i) {
            const double d = std::pow(10.0, -0.3 - 3.7 * i / 299.0);  // (X* - x)/X* from 0.5 to 1e-4
            x.push_back(law.xstar * (1.0 - d));
            tau.push_back(law.A * std::pow(law.xstar * d, law.alpha));
        }
        const auto fit = lab::estimate_xstar(x, tau);
        const double eA = std::abs(fit.A - law.A), ea = std::abs(fit.alpha - law.alpha);
        const double eX = std::abs(fit.xstar - law.xstar);
        v.check(eA < 1e-4 && ea < 1e-3 && eX < 1e-4 * std::min(1.0, law.xstar),
                f("A = %.2f, alpha = %.2f, X* = %.2f: ", law.A, law.alpha, law.xstar) +
                    f("errors A %.1e, alpha %.1e, X* %.1e", eA, ea, eX));
    }
    {
        std::vector<double> x, tau;
        for (int i = 0; i <= 100; ++i) {
            x.push_back(0.9 + 0.09 * i / 100.0);
            tau.push_back(std::sqrt(1.0 - x.back()));
        }
        const auto rf = lab::fit_rate_exponent(x, tau, 1.0, 0.9, 0.99);
        v.check(std::abs(rf.alpha - 0.5) < 1e-6 && std::abs(rf.C_estimate - std::pow(0.1, 0.25)) < 1e-9,
                f("fixed-X* window fit: alpha %.8f, C %.8f (exact 0.5, 0.1^{1/4})", rf.alpha, rf.C_estimate));
    }
    std::vector<double> y;
    for (int i = 0; i <= 2000; ++i) y.push_back(2.0 * i / 2000.0);
    const double s = 0.5;
    struct Field {
        const char* name;
        std::function<double(double)> du;
        double mu;
    };
    for (const Field& fld : {Field{"constant", [s](double) { return s; }, std::pow(s, 4)},
                             Field{"increasing", [s](double t) { return s * (1.0 + t); }, std::pow(s, 4)},
                             // v^{1/4} = s / (1 + s/2) for the decreasing field.
                             Field{"decreasing", [s](double t) { return s * (1.0 - t / 2.0); }, std::pow(0.4, 4)}}) {
        std::vector<double> du;
        for (double t : y) du.push_back(fld.du(t));
        const auto r = lab::mu_of_x(y, du);
        v.check(r.residual < 1e-10 && std::abs(r.mu - fld.mu) < 1e-10,
                std::string("mu, ") + fld.name + f(" field: %.12f (exact %.12f), fixed-point residual %.1e", r.mu, fld.mu, r.residual));
    }
    return v;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all = {
        {1, "exact stationarity", stationarity},
        {2, "manufactured-solution convergence", manufactured},
        {3, "Blasius benchmark", blasius},
        {4, "separation occurrence",
         [] {
             Verdict v;
             const auto t0 = std::chrono::steady_clock::now();
             separation_occurrence(Pressure::constant, v);
             v.check(seconds_since(t0) < 300.0, f("runtime %.1f s < 300 s", seconds_since(t0)));
             return v;
         }},
        {5, "wall-shear quarter bound", [] { Verdict v; quarter_bound(Pressure::constant, v); return v; }},
        {6, "curve quarter rate", [] { Verdict v; curve_rate(Pressure::constant, v); return v; }},
        {7, "curvature bounds", [] { Verdict v; curvature(Pressure::constant, v); return v; }},
        {8, "weighted-mass inequality", weighted_mass},
        {9, "cross-solver agreement", cross_solver},
        {10, "general adverse pressure p = x + 0.1 x^2",
         [] {
             Verdict v;
             const auto t0 = std::chrono::steady_clock::now();
             separation_occurrence(Pressure::quadratic, v);
             quarter_bound(Pressure::quadratic, v);
             curve_rate(Pressure::quadratic, v);
             curvature(Pressure::quadratic, v);
             v.check(seconds_since(t0) < 300.0, f("runtime %.1f s < 300 s", seconds_since(t0)));
             return v;
         }},
        {11, "fitting exactness", fitting},
    };

    bool all_pass = true;
    for (const auto& c : all) {
        if (only != 0 && c.id != only) continue;
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.check(false, std::string("exception: ") + e.what());
        }
        all_pass = all_pass && v.pass;
        std::printf("criterion %2d: %s  %s\n", c.id, v.pass ? "PASS" : "FAIL", c.name);
        for (const auto& l : v.lines) std::printf("    %s\n", l.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
