#include "prandtl/vm/state.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "prandtl/error.hpp"
#include "prandtl/numerics/stencils.hpp"

namespace prandtl::vm {

namespace nm = prandtl::numerics;

namespace {
constexpr const char* kSnapshotHeader = "# prandtl-vm-snapshot v1 x=";
}

double auto_psi_max(const core::WallProfile& profile, double padding) {
    const double u_inf = profile.far_field();
    const double target = std::sqrt(1.0 - 1e-4) * u_inf;
    const auto y = profile.y();
    const auto u = profile.u();
    double y_edge = profile.y_max();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (u[i] >= target) {
            y_edge = y[i];
            break;
        }
    }
    return std::min(profile.total_mass(), padding * profile.mass_at(y_edge));
}

VMState to_von_mises(const core::WallProfile& profile, std::shared_ptr<const PsiGrid> grid) {
    if (!grid) throw PreconditionError("to_von_mises: null grid");
    if (grid->psi_max() > profile.total_mass() * (1.0 + 1e-14)) {
        std::ostringstream msg;
        msg << "insufficient mass: psi_max = " << grid->psi_max() << " exceeds the profile mass "
            << profile.total_mass();
        throw InsufficientMass(msg.str());
    }
    VMState s;
    s.grid = grid;
    s.w.resize(grid->size());
    for (std::size_t j = 0; j < grid->size(); ++j) {
        const double psi = std::min((*grid)[j], profile.total_mass());
        const double u = profile.value_at(profile.y_of_mass(psi));
        s.w[j] = u * u;
    }
    s.w[0] = 0.0;
    return s;
}

double wall_gradient(const VMState& state) {
    const auto psi = state.psi();
    if (psi.size() < 3) throw PreconditionError("wall_gradient: need at least 3 nodes");
    const auto c = nm::forward_first_derivative_weights(psi[1] - psi[0], psi[2] - psi[1]);
    return c.left * state.w[0] + c.centre * state.w[1] + c.right * state.w[2];
}

std::vector<double> psi_gradient(const VMState& state) { return nm::nodal_gradient(state.psi(), state.w); }

PhysicalSamples from_von_mises(const VMState& state, std::size_t y_points) {
    const auto psi = state.psi();
    const auto& w = state.w;
    const std::size_t n = psi.size();
    if (y_points < 2) throw PreconditionError("from_von_mises: need at least 2 output points");
    const double g = wall_gradient(state);
    if (!(g > 0.0)) throw NumericalError("from_von_mises: wall gradient is not positive (at or past separation)");
    for (std::size_t j = 1; j < n; ++j)
        if (!(w[j] > 0.0)) {
            std::ostringstream msg;
            msg << "from_von_mises: w <= 0 at interior node psi = " << psi[j];
            throw NumericalError(msg.str());
        }

    PhysicalSamples out;
    out.y_nodes.assign(n, 0.0);
    out.y_nodes[1] = 2.0 * std::sqrt(psi[1] / g);
    for (std::size_t j = 1; j + 1 < n; ++j)
        out.y_nodes[j + 1] = out.y_nodes[j] + 2.0 * (psi[j + 1] - psi[j]) / (std::sqrt(w[j]) + std::sqrt(w[j + 1]));

    std::vector<double> u(n), du(n);
    const auto dw = psi_gradient(state);
    for (std::size_t j = 0; j < n; ++j) {
        u[j] = std::sqrt(std::max(w[j], 0.0));
        du[j] = 0.5 * dw[j];
    }
    du[0] = 0.5 * g;

    const double y_top = out.y_nodes.back();
    out.y.resize(y_points);
    out.u.resize(y_points);
    out.du.resize(y_points);
    for (std::size_t i = 0; i < y_points; ++i) {
        const double yi = y_top * static_cast<double>(i) / static_cast<double>(y_points - 1);
        out.y[i] = yi;
        const std::size_t k = nm::bracket(out.y_nodes, yi);
        const double h = out.y_nodes[k + 1] - out.y_nodes[k];
        const double t = std::clamp((yi - out.y_nodes[k]) / h, 0.0, 1.0);
        out.u[i] = nm::hermite_value(u[k], u[k + 1], du[k], du[k + 1], h, t);
        out.du[i] = nm::hermite_slope(u[k], u[k + 1], du[k], du[k + 1], h, t);
    }
    return out;
}

std::vector<double> curvature_field(const VMState& state, double wall_pressure_gradient) {
    const auto psi = state.psi();
    const auto& w = state.w;
    const std::size_t n = psi.size();
    std::vector<double> f(n, 0.0);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const auto c = nm::second_derivative_weights(psi[j] - psi[j - 1], psi[j + 1] - psi[j]);
        f[j] = 0.5 * std::sqrt(std::max(w[j], 0.0)) * (c.left * w[j - 1] + c.centre * w[j] + c.right * w[j + 1]);
    }
    f[0] = wall_pressure_gradient;
    f[n - 1] = f[n - 2];
    return f;
}

double continuation_margin(const VMState& state, double k0) {
    if (!(k0 > 0.0) || k0 > state.grid->psi_max()) throw PreconditionError("continuation_margin: need 0 < k0 <= psi_max");
    const auto psi = state.psi();
    const auto dw = psi_gradient(state);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < psi.size() && psi[j] <= k0 * (1.0 + 1e-14); ++j) m = std::min(m, dw[j]);
    return m;
}

void save_snapshot(const VMState& state, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write snapshot " + path.string());
    out.precision(17);
    out << kSnapshotHeader << state.x << '\n';
    const auto psi = state.psi();
    const auto dw = psi_gradient(state);
    for (std::size_t j = 0; j < psi.size(); ++j) out << psi[j] << ' ' << state.w[j] << ' ' << dw[j] << '\n';
}

VMState load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open snapshot " + path.string());
    std::string line;
    const std::string header = kSnapshotHeader;
    if (!std::getline(in, line) || line.rfind(header, 0) != 0)
        throw ConfigError("snapshot " + path.string() + " lacks the vm-snapshot header");
    VMState s;
    try {
        s.x = std::stod(line.substr(header.size()));
    } catch (const std::exception&) {
        throw ConfigError("snapshot " + path.string() + ": malformed x in header");
    }
    std::vector<double> psi;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        double a = 0.0, b = 0.0, c = 0.0;
        if (!(row >> a >> b >> c)) throw ConfigError("snapshot " + path.string() + ": malformed row");
        psi.push_back(a);
        s.w.push_back(b);
    }
    s.grid = std::make_shared<const PsiGrid>(PsiGrid::from_nodes(std::move(psi)));
    return s;
}

}  // namespace prandtl::vm
