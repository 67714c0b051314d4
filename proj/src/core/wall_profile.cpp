#include "prandtl/core/wall_profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "prandtl/core/outer_flow.hpp"
#include "prandtl/error.hpp"
#include "prandtl/numerics/stencils.hpp"

namespace prandtl::core {

namespace nm = prandtl::numerics;

namespace {

constexpr const char* kProfileHeader = "# prandtl-profile v1";

void check_grid(std::span<const double> y, std::span<const double> u) {
    if (y.size() < 4 || u.size() != y.size()) throw PreconditionError("WallProfile: need >= 4 matching samples");
    if (y[0] != 0.0) throw PreconditionError("WallProfile: grid must start at y = 0");
    for (std::size_t i = 1; i < y.size(); ++i)
        if (!(y[i] > y[i - 1])) throw PreconditionError("WallProfile: y-grid must be strictly increasing");
}

}  // namespace

WallProfile::WallProfile(std::vector<double> y, std::vector<double> u, std::vector<double> du, std::vector<double> d2u,
                         bool exact_tables)
    : y_(std::move(y)), u_(std::move(u)), du_(std::move(du)), d2u_(std::move(d2u)) {
    mass_.assign(y_.size(), 0.0);
    for (std::size_t k = 0; k + 1 < y_.size(); ++k) {
        const double h = y_[k + 1] - y_[k];
        mass_[k + 1] = mass_[k] + nm::hermite_integral(u_[k], u_[k + 1], du_[k], du_[k + 1], h, 1.0);
    }
    if (exact_tables) {
        wall_slope_ = du_[0];
        a2_ = d2u_[0];
        const auto fit = nm::wall_taylor_fit(y_, d2u_, 3, 8);
        a3_ = fit[1] / 6.0;
    } else {
        const auto fit = nm::wall_taylor_fit(y_, u_, 5, 12);
        wall_slope_ = fit[1];
        a2_ = fit[2];
        a3_ = fit[3] / 6.0;
        du_[0] = wall_slope_;
        d2u_[0] = a2_;
    }
}

WallProfile WallProfile::from_tables(std::vector<double> y, std::vector<double> u, std::vector<double> du,
                                     std::vector<double> d2u) {
    check_grid(y, u);
    if (du.size() != y.size() || d2u.size() != y.size())
        throw PreconditionError("WallProfile: derivative tables must match the grid");
    return WallProfile(std::move(y), std::move(u), std::move(du), std::move(d2u), true);
}

WallProfile WallProfile::from_samples(std::vector<double> y, std::vector<double> u) {
    check_grid(y, u);
    auto du = nm::nodal_gradient(y, u);
    auto d2u = nm::nodal_second_derivative(y, u);
    return WallProfile(std::move(y), std::move(u), std::move(du), std::move(d2u), false);
}

double WallProfile::value_at(double y) const {
    if (y <= 0.0) return u_[0];
    if (y >= y_.back()) return u_.back();
    const std::size_t k = nm::bracket(y_, y);
    const double h = y_[k + 1] - y_[k];
    return nm::hermite_value(u_[k], u_[k + 1], du_[k], du_[k + 1], h, (y - y_[k]) / h);
}

double WallProfile::slope_at(double y) const {
    if (y <= 0.0) return du_[0];
    if (y >= y_.back()) return du_.back();
    const std::size_t k = nm::bracket(y_, y);
    const double h = y_[k + 1] - y_[k];
    return nm::hermite_slope(u_[k], u_[k + 1], du_[k], du_[k + 1], h, (y - y_[k]) / h);
}

double WallProfile::mass_at(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= y_.back()) return mass_.back() + (y - y_.back()) * u_.back();
    const std::size_t k = nm::bracket(y_, y);
    const double h = y_[k + 1] - y_[k];
    return mass_[k] + nm::hermite_integral(u_[k], u_[k + 1], du_[k], du_[k + 1], h, (y - y_[k]) / h);
}

double WallProfile::y_of_mass(double psi) const {
    if (psi <= 0.0) return 0.0;
    if (psi > mass_.back() * (1.0 + 1e-14)) {
        std::ostringstream msg;
        msg << "insufficient mass: requested psi = " << psi << " but the profile carries only " << mass_.back()
            << " up to y_max = " << y_.back();
        throw InsufficientMass(msg.str());
    }
    const std::size_t k = nm::bracket(mass_, std::min(psi, mass_.back()));
    if (!(mass_[k + 1] > mass_[k]))
        throw NumericalError("y_of_mass: cumulative mass is not increasing near y = " + std::to_string(y_[k]));
    const double h = y_[k + 1] - y_[k];
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mass_[k] + nm::hermite_integral(u_[k], u_[k + 1], du_[k], du_[k + 1], h, mid) < psi) lo = mid;
        else hi = mid;
    }
    return y_[k] + 0.5 * (lo + hi) * h;
}

double WallProfile::thickness(double fraction) const {
    const double target = fraction * far_field();
    for (std::size_t i = 0; i < u_.size(); ++i)
        if (u_[i] >= target) return y_[i];
    return y_.back();
}

void WallProfile::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write profile file " + path.string());
    out << kProfileHeader << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < y_.size(); ++i) out << y_[i] << ' ' << u_[i] << '\n';
}

WallProfile WallProfile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open profile file " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind(kProfileHeader, 0) != 0)
        throw ConfigError("profile file " + path.string() + " lacks the '# prandtl-profile v1' header");
    std::vector<double> y, u;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        double a = 0.0, b = 0.0;
        if (!(row >> a >> b))
            throw ConfigError("profile file " + path.string() + ": malformed line " + std::to_string(line_no));
        y.push_back(a);
        u.push_back(b);
    }
    return from_samples(std::move(y), std::move(u));
}

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ProfileCheck& c) { return c.passed; });
}

const ProfileCheck* ValidationReport::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ValidationReport validate_profile(const WallProfile& profile, const OuterFlow& flow, const ValidationTolerances& tol) {
    ValidationReport report;
    const auto y = profile.y();
    const auto u = profile.u();
    const auto du = profile.du();
    double u_inf = 1.0;
    try {
        u_inf = flow.speed(0.0);
    } catch (const Error&) {
        u_inf = std::max(1.0, profile.far_field());
    }
    const double dp0 = flow.pressure_gradient(0.0);

    std::size_t wall_points = 0;
    for (double yi : y)
        if (yi <= 0.01 * profile.y_max()) ++wall_points;
    report.checks.push_back({"wall_resolution", wall_points >= 3, static_cast<double>(wall_points), 3.0,
                             "samples in [0, 0.01 y_max]"});

    const double wall_tol = 1e-12 * u_inf;
    report.checks.push_back({"wall_value", std::abs(u[0]) <= wall_tol, std::abs(u[0]), wall_tol, "|u0(0)|"});

    report.checks.push_back({"wall_slope_positive", profile.wall_slope() > 0.0, profile.wall_slope(), 0.0, "u0'(0)"});

    double min_slope = du[0];
    double min_step = 0.0;
    std::size_t first_bad = y.size();
    const double mono_tol = tol.monotone_relative * u_inf;
    for (std::size_t i = 0; i < y.size(); ++i) {
        min_slope = std::min(min_slope, du[i]);
        if (i > 0) min_step = std::min(min_step, u[i] - u[i - 1]);
        if (first_bad == y.size() && (du[i] < -mono_tol || (i > 0 && u[i] - u[i - 1] < -mono_tol))) first_bad = i;
    }
    {
        ProfileCheck c{"monotone", first_bad == y.size(), std::min(min_slope, min_step), -mono_tol, "min u0'"};
        if (!c.passed) {
            std::ostringstream d;
            d.precision(6);
            d << "u0 decreases first at y = " << y[first_bad];
            c.detail = d.str();
        }
        report.checks.push_back(c);
    }

    const double far_err = std::abs(profile.far_field() - u_inf);
    report.checks.push_back({"far_field", far_err < tol.far_field_relative * u_inf, far_err,
                             tol.far_field_relative * u_inf, "|u0(y_max) - U(0)|"});

    const double compat_scale = std::max(1.0, std::abs(dp0));
    const double c2 = std::abs(profile.taylor_a2() - dp0);
    report.checks.push_back({"second_derivative_compatibility", c2 <= tol.compatibility * compat_scale, c2,
                             tol.compatibility * compat_scale, "|u0''(0) - p'(0)|"});
    const double c3 = std::abs(6.0 * profile.taylor_a3());
    report.checks.push_back({"third_derivative_compatibility", c3 <= tol.third_derivative * compat_scale, c3,
                             tol.third_derivative * compat_scale, "|u0'''(0)|"});
    return report;
}

WallProfile make_profile(double slope, const OuterFlow& flow, double blend_scale, const ProfileGrid& grid) {
    if (!(slope > 0.0)) throw PreconditionError("make_profile: slope must be positive");
    if (!(blend_scale > 0.0)) throw PreconditionError("make_profile: blend_scale must be positive");
    if (grid.points < 16) throw PreconditionError("make_profile: need at least 16 grid points");
    const double u_inf = flow.speed(0.0);
    const double dp0 = flow.pressure_gradient(0.0);
    const double y_max = grid.y_max > 0.0 ? grid.y_max : 4.0 * blend_scale;
    if (y_max <= blend_scale) throw PreconditionError("make_profile: y_max must exceed blend_scale");

    const std::size_t n = grid.points;
    std::vector<double> y(n), u(n), du(n), d2u(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = y_max * static_cast<double>(i) / static_cast<double>(n - 1);
        const double s = y[i] / blend_scale;
        const double c = nm::quintic_cutoff(s);
        const double c1 = nm::quintic_cutoff_d1(s) / blend_scale;
        const double c2 = nm::quintic_cutoff_d2(s) / (blend_scale * blend_scale);
        const double inner = slope * y[i] + 0.5 * dp0 * y[i] * y[i];
        const double inner1 = slope + dp0 * y[i];
        u[i] = inner * c + u_inf * (1.0 - c);
        du[i] = inner1 * c + (inner - u_inf) * c1;
        d2u[i] = dp0 * c + 2.0 * inner1 * c1 + (inner - u_inf) * c2;
    }

    // Repair: cap at U(0), running maximum, then two passes of a 3-point average restricted to
    // the modified range so the untouched wall region keeps its exact Taylor data.
    std::size_t lo = n, hi = 0;
    double running = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double capped = std::min(std::max(u[i], running), u_inf);
        if (capped != u[i]) {
            lo = std::min(lo, i);
            hi = std::max(hi, i);
            u[i] = capped;
        }
        running = std::max(running, u[i]);
    }
    if (lo < n) {
        if (lo < 4) {
            std::ostringstream msg;
            msg << "make_profile: blend is non-monotone at the wall (y = " << y[lo] << "); cannot repair";
            throw PreconditionError(msg.str());
        }
        const std::size_t a = lo - 2;
        const std::size_t b = std::min(n - 2, hi + 2);
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<double> s = u;
            for (std::size_t i = a; i <= b; ++i) s[i] = (u[i - 1] + u[i] + u[i + 1]) / 3.0;
            u = std::move(s);
        }
        const auto fd1 = nm::nodal_gradient(y, u);
        const auto fd2 = nm::nodal_second_derivative(y, u);
        for (std::size_t i = a - 2; i <= std::min(n - 1, b + 2); ++i) {
            du[i] = fd1[i];
            d2u[i] = fd2[i];
        }
        for (std::size_t i = b + 3; i < n; ++i) {
            // Past the repaired band the cap holds u0 at U(0).
            if (u[i] == u_inf) {
                du[i] = 0.0;
                d2u[i] = 0.0;
            }
        }
    }
    auto profile = WallProfile::from_tables(std::move(y), std::move(u), std::move(du), std::move(d2u));
    const auto report = validate_profile(profile, flow);
    if (const auto* mono = report.find("monotone"); mono && !mono->passed)
        throw PreconditionError("make_profile: repair failed, " + mono->detail);
    return profile;
}

double tapered_profile_length(double slope, double dp0, double far_field) {
    if (!(slope > 0.0)) throw PreconditionError("make_tapered_profile: slope must be positive");
    if (!(far_field > 0.0)) throw PreconditionError("make_tapered_profile: far field must be positive");
    const double a = dp0 / 7.0;
    const double b = slope / 2.0;
    const double disc = b * b + 4.0 * a * far_field;
    if (disc < 0.0) throw PreconditionError("make_tapered_profile: favourable gradient too strong for this slope");
    const double length = 2.0 * far_field / (b + std::sqrt(disc));
    if (!(length > 0.0) || slope + dp0 * length < 0.0)
        throw PreconditionError("make_tapered_profile: construction would be non-monotone");
    return length;
}

WallProfile make_tapered_profile(double slope, const OuterFlow& flow, const ProfileGrid& grid) {
    const double u_inf = flow.speed(0.0);
    const double dp0 = flow.pressure_gradient(0.0);
    const double length = tapered_profile_length(slope, dp0, u_inf);
    if (grid.points < 16) throw PreconditionError("make_tapered_profile: need at least 16 grid points");
    const double y_max = grid.y_max > 0.0 ? grid.y_max : 3.0 * length;
    if (y_max < length) throw PreconditionError("make_tapered_profile: y_max shorter than the taper length");

    // u0'(y) = (slope + dp0 y) chi(y / l) is a polynomial on [0, l]; integrate it exactly.
    const nm::Polynomial chi = nm::Polynomial({1.0, 0.0, 0.0, -10.0, 15.0, -6.0}).stretched(length);
    const nm::Polynomial shear = nm::Polynomial({slope, dp0}) * chi;
    const nm::Polynomial value = shear.antiderivative();
    const nm::Polynomial curvature = shear.derivative();

    const std::size_t n = grid.points;
    std::vector<double> y(n), u(n), du(n), d2u(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = y_max * static_cast<double>(i) / static_cast<double>(n - 1);
        if (y[i] < length) {
            u[i] = value(y[i]);
            du[i] = shear(y[i]);
            d2u[i] = curvature(y[i]);
        } else {
            u[i] = u_inf;
            du[i] = 0.0;
            d2u[i] = 0.0;
        }
    }
    return WallProfile::from_tables(std::move(y), std::move(u), std::move(du), std::move(d2u));
}

}  // namespace prandtl::core
