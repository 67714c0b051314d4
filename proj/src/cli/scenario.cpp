#include "prandtl/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "prandtl/core/separation_criterion.hpp"
#include "prandtl/error.hpp"
#include "prandtl/lab/diagnostics.hpp"
#include "prandtl/lab/fits.hpp"
#include "prandtl/lab/mu.hpp"
#include "prandtl/lab/scan.hpp"
#include "prandtl/phys/blasius.hpp"
#include "prandtl/phys/solver.hpp"
#include "prandtl/vm/march.hpp"

namespace prandtl::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kKeys = {
    "scenario.label",
    "flow.mode", "flow.gradient", "flow.pressure", "flow.x0", "flow.u0",
    "profile.mode", "profile.path", "profile.slope", "profile.blend_scale", "profile.x_virtual",
    "profile.y_max", "profile.points",
    "grid.N", "grid.gamma", "grid.psi_max", "grid.psi_padding",
    "march.dx0", "march.dx_min", "march.tau_stop_rel", "march.x_end", "march.snapshots",
    "march.snapshot_stride", "march.tau_change_max", "march.scheme", "march.picard_max", "march.picard_tol",
    "phys.enabled", "phys.y_points", "phys.y_max", "phys.thickness_factor", "phys.dx0", "phys.tau_change_max",
    "analysis.tail_fraction", "analysis.window_lo", "analysis.window_hi", "analysis.B", "analysis.epsilon0",
    "analysis.mu", "analysis.delta", "analysis.collapse_fractions", "analysis.trace_probe",
    "sweep.slopes", "sweep.x0s", "sweep.Ns",
};

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

double positive(const Config& c, const std::string& key, double fallback) {
    const double v = c.get_double(key, fallback);
    require(v > 0.0 && std::isfinite(v), c.origin() + ": " + key + " must be positive");
    return v;
}

double non_negative(const Config& c, const std::string& key, double fallback) {
    const double v = c.get_double(key, fallback);
    require(v >= 0.0 && std::isfinite(v), c.origin() + ": " + key + " must be non-negative");
    return v;
}

double auto_or(const Config& c, const std::string& key, double fallback) {
    const auto v = c.get(key);
    if (v && *v == "auto") return 0.0;
    return non_negative(c, key, fallback);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// JSON has no representation for non-finite numbers.
json finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

const std::vector<std::string>& known_keys() { return kKeys; }

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

ScenarioConfig ScenarioConfig::from_config(const Config& c) {
    const std::set<std::string> known(kKeys.begin(), kKeys.end());
    for (const auto& [key, value] : c.values())
        require(known.count(key) != 0, c.origin() + ": unknown key '" + key + "'");

    ScenarioConfig s;
    s.label = c.get_string("scenario.label", s.label);
    require(!s.label.empty(), c.origin() + ": scenario.label must not be empty");

    const std::string fm = c.get_string("flow.mode", "constant_adverse");
    if (fm == "constant_adverse") {
        s.flow.mode = FlowSettings::Mode::constant_adverse;
        s.flow.gradient = positive(c, "flow.gradient", 1.0);
        require(!c.has("flow.pressure") && !c.has("flow.u0"),
                c.origin() + ": flow.pressure and flow.u0 do not apply to flow.mode = constant_adverse");
    } else if (fm == "polynomial") {
        s.flow.mode = FlowSettings::Mode::polynomial;
        require(c.has("flow.pressure"), c.origin() + ": flow.mode = polynomial needs flow.pressure");
        s.flow.pressure_coefficients = c.get_list("flow.pressure", {});
        require(s.flow.pressure_coefficients.size() >= 2, c.origin() + ": flow.pressure needs at least two coefficients");
        require(!c.has("flow.gradient") && !c.has("flow.u0"),
                c.origin() + ": flow.gradient and flow.u0 do not apply to flow.mode = polynomial");
    } else if (fm == "neutral") {
        s.flow.mode = FlowSettings::Mode::neutral;
        s.flow.u0 = positive(c, "flow.u0", 1.0);
        require(!c.has("flow.pressure") && !c.has("flow.gradient") && !c.has("flow.x0"),
                c.origin() + ": flow.pressure, flow.gradient and flow.x0 do not apply to flow.mode = neutral");
    } else {
        throw ConfigError(c.origin() + ": flow.mode must be constant_adverse, polynomial or neutral, got '" + fm + "'");
    }
    if (s.flow.mode != FlowSettings::Mode::neutral) s.flow.x0 = positive(c, "flow.x0", 16.0);

    const std::string pm = c.get_string("profile.mode", "tapered");
    auto forbid = [&](std::initializer_list<const char*> keys) {
        for (const char* k : keys)
            require(!c.has(k), c.origin() + ": " + k + " does not apply to profile.mode = " + pm);
    };
    if (pm == "file") {
        s.profile.mode = ProfileSettings::Mode::file;
        s.profile.path = c.get_string("profile.path", "");
        require(!s.profile.path.empty(), c.origin() + ": profile.mode = file needs profile.path");
        forbid({"profile.slope", "profile.blend_scale", "profile.x_virtual", "profile.y_max", "profile.points"});
    } else if (pm == "generated" || pm == "tapered") {
        s.profile.mode = pm == "generated" ? ProfileSettings::Mode::generated : ProfileSettings::Mode::tapered;
        s.profile.slope = positive(c, "profile.slope", s.profile.slope);
        if (s.profile.mode == ProfileSettings::Mode::generated)
            s.profile.blend_scale = positive(c, "profile.blend_scale", s.profile.blend_scale);
        else
            forbid({"profile.blend_scale"});
        forbid({"profile.path", "profile.x_virtual"});
    } else if (pm == "blasius") {
        s.profile.mode = ProfileSettings::Mode::blasius;
        s.profile.x_virtual = positive(c, "profile.x_virtual", 1.0);
        forbid({"profile.path", "profile.slope", "profile.blend_scale"});
        require(s.flow.mode == FlowSettings::Mode::neutral && s.flow.u0 == 1.0,
                c.origin() + ": profile.mode = blasius needs flow.mode = neutral with flow.u0 = 1");
    } else {
        throw ConfigError(c.origin() + ": profile.mode must be file, generated, tapered or blasius, got '" + pm + "'");
    }
    s.profile.y_max = auto_or(c, "profile.y_max", 0.0);
    s.profile.points = c.get_size("profile.points", s.profile.points);
    require(s.profile.points >= 16, c.origin() + ": profile.points must be at least 16");

    s.grid.intervals = c.get_size("grid.N", s.grid.intervals);
    require(s.grid.intervals >= 8, c.origin() + ": grid.N must be at least 8");
    s.grid.grading = c.get_double("grid.gamma", s.grid.grading);
    require(s.grid.grading >= 1.0, c.origin() + ": grid.gamma must be at least 1");
    s.grid.psi_max = auto_or(c, "grid.psi_max", 0.0);
    s.grid.psi_padding = positive(c, "grid.psi_padding", s.grid.psi_padding);

    s.march.dx0 = positive(c, "march.dx0", s.march.dx0);
    s.march.dx_min = positive(c, "march.dx_min", s.march.dx_min);
    require(s.march.dx_min <= s.march.dx0, c.origin() + ": march.dx_min exceeds march.dx0");
    s.march.tau_stop_rel = positive(c, "march.tau_stop_rel", s.march.tau_stop_rel);
    require(s.march.tau_stop_rel < 1.0, c.origin() + ": march.tau_stop_rel must be below 1");
    s.march.x_end = auto_or(c, "march.x_end", 0.0);
    require(s.march.x_end > 0.0 || s.flow.mode != FlowSettings::Mode::neutral,
            c.origin() + ": flow.mode = neutral needs march.x_end");
    s.march.snapshot_xs = c.get_list("march.snapshots", {});
    for (double x : s.march.snapshot_xs) require(x > 0.0, c.origin() + ": march.snapshots must be positive");
    s.march.snapshot_stride = c.get_size("march.snapshot_stride", s.march.snapshot_stride);
    s.march.tau_change_max = non_negative(c, "march.tau_change_max", s.march.tau_change_max);
    const std::string scheme = c.get_string("march.scheme", "picard");
    require(scheme == "picard" || scheme == "semi_implicit",
            c.origin() + ": march.scheme must be picard or semi_implicit");
    s.march.picard = scheme == "picard";
    s.march.picard_max = static_cast<int>(c.get_size("march.picard_max", 8));
    require(s.march.picard_max >= 1, c.origin() + ": march.picard_max must be at least 1");
    s.march.picard_tol = positive(c, "march.picard_tol", s.march.picard_tol);

    s.phys.enabled = c.get_bool("phys.enabled", true);
    s.phys.y_points = c.get_size("phys.y_points", s.phys.y_points);
    require(s.phys.y_points >= 16, c.origin() + ": phys.y_points must be at least 16");
    s.phys.y_max = auto_or(c, "phys.y_max", 0.0);
    s.phys.thickness_factor = positive(c, "phys.thickness_factor", s.phys.thickness_factor);
    s.phys.dx0 = auto_or(c, "phys.dx0", 0.0);
    s.phys.tau_change_max = auto_or(c, "phys.tau_change_max", 0.0);

    s.analysis.tail_fraction = positive(c, "analysis.tail_fraction", s.analysis.tail_fraction);
    require(s.analysis.tail_fraction <= 1.0, c.origin() + ": analysis.tail_fraction must not exceed 1");
    s.analysis.window_lo = positive(c, "analysis.window_lo", s.analysis.window_lo);
    s.analysis.window_hi = positive(c, "analysis.window_hi", s.analysis.window_hi);
    require(s.analysis.window_lo < s.analysis.window_hi && s.analysis.window_hi < 1.0,
            c.origin() + ": analysis window needs 0 < window_lo < window_hi < 1");
    s.analysis.B = positive(c, "analysis.B", s.analysis.B);
    s.analysis.epsilon0 = auto_or(c, "analysis.epsilon0", 0.0);
    s.analysis.mu = positive(c, "analysis.mu", s.analysis.mu);
    require(s.analysis.mu < 1.0, c.origin() + ": analysis.mu must be below 1");
    s.analysis.delta = positive(c, "analysis.delta", s.analysis.delta);
    s.analysis.collapse_fractions = c.get_list("analysis.collapse_fractions", s.analysis.collapse_fractions);
    for (double f : s.analysis.collapse_fractions)
        require(f > 0.0 && f < 1.0, c.origin() + ": analysis.collapse_fractions must lie in (0, 1)");
    s.analysis.trace_probe = positive(c, "analysis.trace_probe", s.analysis.trace_probe);
    return s;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
    return from_config(Config::load(path));
}

std::string ScenarioConfig::canonical() const {
    std::ostringstream o;
    static const char* flow_names[] = {"constant_adverse", "polynomial", "neutral"};
    static const char* profile_names[] = {"file", "generated", "tapered", "blasius"};
    o << "[scenario]\nlabel = " << label << "\n";
    o << "[flow]\nmode = " << flow_names[static_cast<int>(flow.mode)] << "\n";
    switch (flow.mode) {
        case FlowSettings::Mode::constant_adverse: o << "gradient = " << num(flow.gradient) << "\n"; break;
        case FlowSettings::Mode::polynomial: o << "pressure = " << list(flow.pressure_coefficients) << "\n"; break;
        case FlowSettings::Mode::neutral: o << "u0 = " << num(flow.u0) << "\n"; break;
    }
    if (flow.mode != FlowSettings::Mode::neutral) o << "x0 = " << num(flow.x0) << "\n";
    o << "[profile]\nmode = " << profile_names[static_cast<int>(profile.mode)] << "\n";
    switch (profile.mode) {
        case ProfileSettings::Mode::file: o << "path = " << profile.path << "\n"; break;
        case ProfileSettings::Mode::generated:
            o << "slope = " << num(profile.slope) << "\nblend_scale = " << num(profile.blend_scale) << "\n";
            break;
        case ProfileSettings::Mode::tapered: o << "slope = " << num(profile.slope) << "\n"; break;
        case ProfileSettings::Mode::blasius: o << "x_virtual = " << num(profile.x_virtual) << "\n"; break;
    }
    if (profile.mode != ProfileSettings::Mode::file)
        o << "y_max = " << num(profile.y_max) << "\npoints = " << profile.points << "\n";
    o << "[grid]\nN = " << grid.intervals << "\ngamma = " << num(grid.grading) << "\npsi_max = " << num(grid.psi_max)
      << "\npsi_padding = " << num(grid.psi_padding) << "\n";
    o << "[march]\ndx0 = " << num(march.dx0) << "\ndx_min = " << num(march.dx_min)
      << "\ntau_stop_rel = " << num(march.tau_stop_rel) << "\nx_end = " << num(march.x_end)
      << "\nsnapshots = " << list(march.snapshot_xs) << "\nsnapshot_stride = " << march.snapshot_stride
      << "\ntau_change_max = " << num(march.tau_change_max) << "\nscheme = " << (march.picard ? "picard" : "semi_implicit")
      << "\npicard_max = " << march.picard_max << "\npicard_tol = " << num(march.picard_tol) << "\n";
    o << "[phys]\nenabled = " << (phys.enabled ? "true" : "false") << "\ny_points = " << phys.y_points
      << "\ny_max = " << num(phys.y_max) << "\nthickness_factor = " << num(phys.thickness_factor)
      << "\ndx0 = " << num(phys.dx0) << "\ntau_change_max = " << num(phys.tau_change_max) << "\n";
    o << "[analysis]\ntail_fraction = " << num(analysis.tail_fraction) << "\nwindow_lo = " << num(analysis.window_lo)
      << "\nwindow_hi = " << num(analysis.window_hi) << "\nB = " << num(analysis.B)
      << "\nepsilon0 = " << num(analysis.epsilon0) << "\nmu = " << num(analysis.mu)
      << "\ndelta = " << num(analysis.delta) << "\ncollapse_fractions = " << list(analysis.collapse_fractions)
      << "\ntrace_probe = " << num(analysis.trace_probe) << "\n";
    return o.str();
}

std::string ScenarioConfig::hash() const {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
    return buf;
}

core::OuterFlow ScenarioConfig::make_flow() const {
    switch (flow.mode) {
        case FlowSettings::Mode::constant_adverse:
            return core::OuterFlow::adverse(core::PressureSpec::constant(flow.gradient), flow.x0);
        case FlowSettings::Mode::polynomial:
            return core::OuterFlow::adverse(
                core::PressureSpec::polynomial(numerics::Polynomial(flow.pressure_coefficients)), flow.x0);
        case FlowSettings::Mode::neutral:
            break;
    }
    return core::OuterFlow::with_inflow_speed(core::PressureSpec::constant(0.0), flow.u0);
}

core::WallProfile ScenarioConfig::make_profile(const core::OuterFlow& f) const {
    const core::ProfileGrid pg{profile.y_max, profile.points};
    switch (profile.mode) {
        case ProfileSettings::Mode::file: return core::WallProfile::load(profile.path);
        case ProfileSettings::Mode::generated: return core::make_profile(profile.slope, f, profile.blend_scale, pg);
        case ProfileSettings::Mode::tapered: return core::make_tapered_profile(profile.slope, f, pg);
        case ProfileSettings::Mode::blasius: break;
    }
    const auto ref = phys::blasius_reference();
    const double y_max = profile.y_max > 0.0 ? profile.y_max : ref.eta_max * std::sqrt(profile.x_virtual);
    return phys::blasius_profile(ref, profile.x_virtual, y_max, profile.points);
}

bool ScenarioResult::clean() const {
    auto ok = [](const vm::RunRecord& r) {
        return r.termination == vm::Termination::separated || r.termination == vm::Termination::reached_x_end;
    };
    return ok(vm) && (!phys || ok(*phys));
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, bool vm_only) {
    const auto flow = cfg.make_flow();
    const auto profile = cfg.make_profile(flow);
    const std::string hash = cfg.hash();

    const double psi_max = cfg.grid.psi_max > 0.0 ? cfg.grid.psi_max : vm::auto_psi_max(profile, cfg.grid.psi_padding);
    auto grid = std::make_shared<const vm::PsiGrid>(psi_max, cfg.grid.intervals, cfg.grid.grading);
    vm::MarchControls mc;
    mc.dx0 = cfg.march.dx0;
    mc.dx_min = cfg.march.dx_min;
    mc.tau_stop_rel = cfg.march.tau_stop_rel;
    mc.x_end = cfg.march.x_end;
    mc.snapshot_xs = cfg.march.snapshot_xs;
    mc.snapshot_stride = cfg.march.snapshot_stride;
    mc.tau_change_max = cfg.march.tau_change_max;
    mc.step.mode = cfg.march.picard ? vm::StepMode::picard : vm::StepMode::semi_implicit;
    mc.step.picard_max = cfg.march.picard_max;
    mc.step.picard_tol = cfg.march.picard_tol;
    auto vm_rec = vm::march_until_separation(vm::to_von_mises(profile, grid), flow, mc);
    vm_rec.scenario_hash = hash;

    std::optional<vm::RunRecord> phys_rec;
    if (cfg.phys.enabled && !vm_only) {
        phys::PhysControls pc;
        pc.dx0 = cfg.phys.dx0 > 0.0 ? cfg.phys.dx0 : cfg.march.dx0;
        pc.dx_min = cfg.march.dx_min;
        pc.tau_stop_rel = cfg.march.tau_stop_rel;
        pc.x_end = cfg.march.x_end;
        pc.tau_change_max = cfg.phys.tau_change_max > 0.0 ? cfg.phys.tau_change_max : cfg.march.tau_change_max;
        pc.y_max = cfg.phys.y_max;
        pc.thickness_factor = cfg.phys.thickness_factor;
        pc.y_points = cfg.phys.y_points;
        phys_rec = phys::run_physical(profile, flow, pc);
        phys_rec->scenario_hash = hash;
    }
    auto analysis = analyze(cfg, flow, profile, vm_rec, phys_rec ? &*phys_rec : nullptr);
    return ScenarioResult{cfg, flow, profile, std::move(vm_rec), std::move(phys_rec), std::move(analysis)};
}

json analyze(const ScenarioConfig& cfg, const core::OuterFlow& flow, const core::WallProfile& profile,
             const vm::RunRecord& rec, const vm::RunRecord* phys_rec) {
    json a;
    json notes = json::array();
    auto attempt = [&](const char* what, auto&& body) {
        try {
            body();
        } catch (const Error& e) {
            notes.push_back(std::string(what) + ": " + e.what());
        }
    };

    static const char* flow_names[] = {"constant_adverse", "polynomial", "neutral"};
    static const char* profile_names[] = {"file", "generated", "tapered", "blasius"};
    a["schema"] = "prandtl-analysis v1";
    a["label"] = cfg.label;
    a["scenario_hash"] = cfg.hash();
    a["scenario"] = {
        {"flow_mode", flow_names[static_cast<int>(cfg.flow.mode)]},
        {"profile_mode", profile_names[static_cast<int>(cfg.profile.mode)]},
        {"slope", profile.wall_slope()},
        {"x0", opt(flow.x0())},
        {"N", cfg.grid.intervals},
        {"gamma", cfg.grid.grading},
        {"psi_max", rec.snapshots.empty() ? json(cfg.grid.psi_max) : json(rec.snapshots.front().grid->psi_max())},
    };
    a["status"] = vm::to_string(rec.termination);
    a["message"] = rec.message;
    a["stations"] = rec.stations.size();
    a["x_last"] = rec.stations.back().x;
    a["tau0"] = rec.tau0();

    const bool separated = rec.termination == vm::Termination::separated;
    std::optional<double> xstar;
    a["xstar"] = nullptr;
    a["alpha"] = nullptr;
    a["C_estimate"] = nullptr;
    a["window"] = nullptr;
    a["residual"] = nullptr;
    a["xstar_fit"] = nullptr;
    if (separated) {
        attempt("estimate_xstar", [&] {
            const auto fit = lab::estimate_xstar(rec, cfg.analysis.tail_fraction);
            xstar = fit.xstar;
            a["xstar"] = fit.xstar;
            a["xstar_fit"] = {{"A", fit.A}, {"alpha", fit.alpha}, {"residual", fit.residual},
                              {"stations", fit.stations}, {"iterations", fit.iterations}};
        });
    }
    if (xstar) {
        const double X = *xstar;
        const double x_lo = X * (1.0 - cfg.analysis.window_hi), x_hi = X * (1.0 - cfg.analysis.window_lo);
        a["window"] = {x_lo, x_hi};
        attempt("fit_rate_exponent", [&] {
            const auto rf = lab::fit_rate_exponent(rec, X, x_lo, x_hi);
            a["alpha"] = rf.alpha;
            a["C_estimate"] = rf.C_estimate;
            a["residual"] = rf.residual;
            a["window_stations"] = rf.stations;
        });
    }

    a["min_uyy"] = nullptr;
    a["max_uyy"] = nullptr;
    attempt("curvature", [&] {
        const auto cb = lab::check_second_derivative_bounds(rec, profile, flow);
        a["min_uyy"] = cb.min_uyy;
        a["max_uyy"] = cb.max_uyy;
        a["max_uyy_excess"] = cb.max_excess;
        a["curvature_hypothesis"] = cb.upper_hypothesis;
        a["inflow_max_uyy"] = cb.inflow_max_uyy;
    });

    a["scan_windows"] = json::array();
    a["scan_band"] = nullptr;
    a["scan_slope"] = nullptr;
    a["goldstein"] = json::array();
    a["goldstein_residuals"] = json::array();
    a["collapse"] = nullptr;
    if (xstar) {
        const double X = *xstar;
        std::vector<vm::VMState> before;
        for (const auto& s : rec.snapshots)
            if (s.x < X) before.push_back(s);
        attempt("scan_quarter_rate", [&] {
            const auto scan = lab::scan_quarter_rate(before, X);
            for (const auto& w : scan.windows)
                a["scan_windows"].push_back(
                    {{"k", w.k}, {"max_ratio", w.max_ratio}, {"count", w.count}, {"max_ratio_min", w.max_ratio_min}});
            a["scan_band"] = finite(scan.band);
            a["scan_slope"] = finite(scan.slope);
        });
        attempt("goldstein_fit", [&] {
            const double s_lo = cfg.analysis.window_lo * X, s_hi = cfg.analysis.window_hi * X;
            const auto g1 = lab::goldstein_fit(rec, X, 1, s_lo, s_hi);
            const auto g2 = lab::goldstein_fit(rec, X, 2, s_lo, s_hi);
            a["goldstein"] = g2.coefficients;
            a["goldstein_one_term"] = g1.coefficients[0];
            a["goldstein_residuals"] = {g1.residual, g2.residual};
        });
        attempt("selfsimilar_collapse", [&] {
            std::vector<double> lambdas;
            for (double f : cfg.analysis.collapse_fractions) lambdas.push_back(f * X);
            const auto col = lab::selfsimilar_collapse(before, X, lambdas);
            a["collapse"] = {{"lambdas", col.lambdas}, {"errors", col.pair_errors}, {"eta_max", col.eta_max}};
        });
    }

    a["weighted_mass"] = nullptr;
    attempt("weighted_mass_inequality", [&] {
        std::vector<vm::VMState> snaps = rec.snapshots;
        std::sort(snaps.begin(), snaps.end(), [](const auto& p, const auto& q) { return p.x < q.x; });
        const auto wm = lab::weighted_mass_inequality(snaps, flow, cfg.analysis.delta);
        const double u0 = flow.speed(0.0);
        a["weighted_mass"] = {{"delta", cfg.analysis.delta},
                              {"max_residual", finite(wm.max_residual)},
                              {"tolerance", 1e-3 * u0 * u0 * cfg.analysis.delta},
                              {"pairs", wm.rows.size()},
                              {"skipped_pairs", wm.skipped_pairs}};
    });

    a["wall_trace_deviation"] = nullptr;
    if (!rec.snapshots.empty())
        attempt("wall_trace_deviation", [&] {
            a["wall_trace_deviation"] = lab::wall_trace_deviation(rec.snapshots, flow, cfg.analysis.trace_probe);
        });

    a["separation_condition"] = nullptr;
    a["separation_bound"] = nullptr;
    if (flow.is_adverse()) {
        attempt("separation_condition", [&] {
            const double eps0 = cfg.analysis.epsilon0 > 0.0 ? cfg.analysis.epsilon0
                                                            : core::default_epsilon0(cfg.analysis.mu, cfg.analysis.B);
            const auto sc = core::check_separation_condition(profile, flow, cfg.analysis.mu, cfg.analysis.B, eps0);
            a["separation_condition"] = {{"B", sc.B},           {"epsilon0", sc.epsilon0}, {"mu", sc.mu},
                                         {"psi0", sc.psi0},     {"y0", sc.y0},             {"slope_sup", sc.slope_sup},
                                         {"threshold", sc.threshold}, {"satisfied", sc.satisfied}};
        });
        const double bound = cfg.analysis.mu * *flow.x0() / 2.0;
        a["separation_bound"] = {{"mu", cfg.analysis.mu},
                                 {"x0", *flow.x0()},
                                 {"bound", bound},
                                 {"satisfied", xstar ? json(*xstar < bound) : json(nullptr)}};
    }

    attempt("mu_of_x", [&] {
        const auto m = lab::mu_of_x(profile.y(), profile.du());
        a["mu_inflow"] = {{"mu", m.mu}, {"residual", m.residual}};
    });

    a["phys"] = nullptr;
    if (phys_rec) {
        json p = {{"status", vm::to_string(phys_rec->termination)},
                  {"message", phys_rec->message},
                  {"stations", phys_rec->stations.size()}};
        attempt("compare_solvers", [&] {
            const auto cmp = lab::compare_solvers(rec, *phys_rec, cfg.analysis.tail_fraction);
            p["xstar"] = opt(cmp.xstar_phys);
            p["max_rel_tau_diff"] = cmp.max_rel_tau_diff;
            p["x_limit"] = cmp.x_limit;
            p["xstar_rel_diff"] = opt(cmp.xstar_rel_diff);
            p["compared"] = cmp.compared;
        });
        a["phys"] = p;
    }
    a["notes"] = notes;
    return a;
}

void write_outputs(const ScenarioResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir / "snapshots", ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
    vm::write_record_csv(r.vm, dir / "run_vm.csv");
    if (r.phys) vm::write_record_csv(*r.phys, dir / "run_phys.csv");
    {
        std::ofstream out(dir / "analysis.json");
        if (!out) throw ConfigError("cannot write " + (dir / "analysis.json").string());
        out << r.analysis.dump(2) << "\n";
    }
    {
        std::ofstream out(dir / "scenario.cfg");
        out << r.config.canonical();
    }
    std::vector<double> wanted = r.config.march.snapshot_xs;
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    std::size_t index = 0;
    for (double x : wanted) {
        for (const auto& s : r.vm.snapshots) {
            if (s.x != x) continue;
            char name[40];
            std::snprintf(name, sizeof name, "snapshot_%03zu.txt", index);
            vm::save_snapshot(s, dir / "snapshots" / name);
            break;
        }
        ++index;
    }
}

}  // namespace prandtl::cli
