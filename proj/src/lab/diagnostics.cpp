#include "prandtl/lab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prandtl/error.hpp"
#include "prandtl/lab/fits.hpp"
#include "prandtl/numerics/stencils.hpp"
#include "prandtl/vm/state.hpp"

namespace prandtl::lab {

namespace nm = prandtl::numerics;

CurvatureBounds check_second_derivative_bounds(const vm::RunRecord& record, const core::WallProfile& profile,
                                               const core::OuterFlow& flow, double tol) {
    CurvatureBounds b;
    b.min_uyy = std::numeric_limits<double>::infinity();
    b.max_uyy = -std::numeric_limits<double>::infinity();
    b.max_excess = -std::numeric_limits<double>::infinity();
    for (const auto& s : record.stations) {
        b.max_excess = std::max(b.max_excess, s.max_uyy - flow.pressure_gradient(s.x));
        b.x.push_back(s.x);
        b.min_per_x.push_back(s.min_uyy);
        b.max_per_x.push_back(s.max_uyy);
        b.min_uyy = std::min(b.min_uyy, s.min_uyy);
        b.max_uyy = std::max(b.max_uyy, s.max_uyy);
    }
    const auto d2 = profile.d2u();
    b.inflow_max_uyy = *std::max_element(d2.begin(), d2.end());
    bool convex = true;
    const double x_hi = flow.x0() ? *flow.x0() : (record.stations.empty() ? 0.0 : record.stations.back().x);
    for (int i = 0; i <= 1000; ++i)
        if (flow.pressure_second_derivative(x_hi * i / 1000.0) < 0.0) convex = false;
    b.upper_hypothesis = convex && b.inflow_max_uyy <= flow.pressure_gradient(0.0) + tol;
    return b;
}

double wall_trace_deviation(const std::vector<vm::VMState>& snapshots, const core::OuterFlow& flow, double psi_probe) {
    double worst = 0.0;
    for (const auto& s : snapshots) {
        const auto f = vm::curvature_field(s, flow.pressure_gradient(s.x));
        const auto psi = s.psi();
        std::size_t j = 1;
        while (j + 2 < psi.size() && psi[j] < psi_probe) ++j;
        worst = std::max(worst, std::abs(f[j] - flow.pressure_gradient(s.x)));
    }
    return worst;
}

namespace {

struct WindowIntegrals {
    double mass = 0.0;   // int w phi
    double phi = 0.0;    // int phi
    double flux = 0.0;   // int w^{3/2} phi''
};

/// Integrals over [0, delta] on a fine uniform auxiliary grid (w linearly interpolated).
WindowIntegrals window_integrals(const vm::VMState& s, double delta) {
    const auto psi = s.psi();
    const std::size_t m = 4000;
    const double h = delta / static_cast<double>(m);
    const double half = 0.5 * delta;
    WindowIntegrals r;
    for (std::size_t i = 0; i <= m; ++i) {
        const double p = h * static_cast<double>(i);
        const double wt = (i == 0 || i == m) ? 0.5 * h : h;
        const double w = std::max(nm::interpolate_linear(psi, s.w, p), 0.0);
        const double t = (p - half) / half;
        const double phi = nm::quintic_cutoff(t);
        const double phi2 = nm::quintic_cutoff_d2(t) / (half * half);
        r.mass += wt * w * phi;
        r.phi += wt * phi;
        r.flux += wt * std::pow(w, 1.5) * phi2;
    }
    return r;
}

}  // namespace

MassInequalityReport weighted_mass_inequality(const std::vector<vm::VMState>& snapshots, const core::OuterFlow& flow,
                                              double delta) {
    MassInequalityReport rep;
    if (!(delta > 0.0)) throw PreconditionError("weighted_mass_inequality: delta must be positive");
    for (const auto& s : snapshots)
        if (delta > s.grid->psi_max()) throw PreconditionError("weighted_mass_inequality: delta exceeds psi_max");
    for (std::size_t i = 0; i + 1 < snapshots.size(); ++i) {
        const auto& a = snapshots[i];
        const auto& b = snapshots[i + 1];
        const double dx = b.x - a.x;
        if (!(dx > 0.0)) continue;
        if (dx >= delta * delta / 10.0) {
            ++rep.skipped_pairs;
            continue;
        }
        const auto ia = window_integrals(a, delta);
        const auto ib = window_integrals(b, delta);
        MassInequalityRow row;
        row.x_mid = 0.5 * (a.x + b.x);
        row.lhs = (ib.mass - ia.mass) / dx;
        const double ra = -2.0 * flow.pressure_gradient(a.x) * ia.phi + (2.0 / 3.0) * ia.flux;
        const double rb = -2.0 * flow.pressure_gradient(b.x) * ib.phi + (2.0 / 3.0) * ib.flux;
        row.rhs = 0.5 * (ra + rb);
        row.residual = row.lhs - row.rhs;
        rep.max_residual = std::max(rep.max_residual, row.residual);
        rep.rows.push_back(row);
    }
    return rep;
}

CollapseReport selfsimilar_collapse(const std::vector<vm::VMState>& snapshots, double xstar,
                                    const std::vector<double>& lambdas, double eta_cap) {
    CollapseReport rep;
    if (snapshots.empty()) throw PreconditionError("selfsimilar_collapse: no snapshots");
    struct Scaled {
        double lambda;
        std::vector<double> y, u;
    };
    std::vector<Scaled> scaled;
    rep.eta_max = eta_cap;
    for (double lambda : lambdas) {
        if (!(lambda > 0.0) || xstar - lambda < 0.0)
            throw PreconditionError("selfsimilar_collapse: lambda must be positive with X* - lambda >= 0");
        const double target = xstar - lambda;
        const vm::VMState* best = nullptr;
        for (const auto& s : snapshots)
            if (s.x < xstar && (!best || std::abs(s.x - target) < std::abs(best->x - target))) best = &s;
        if (!best) throw PreconditionError("selfsimilar_collapse: no snapshot before X*");
        const double lam = xstar - best->x;
        const auto phys = vm::from_von_mises(*best, 4001);
        rep.eta_max = std::min(rep.eta_max, phys.y.back() / std::pow(lam, 0.25));
        scaled.push_back({lam, phys.y, phys.u});
        rep.lambdas.push_back(lam);
    }
    const std::size_t m = 400;
    for (std::size_t i = 0; i + 1 < scaled.size(); ++i) {
        double err = 0.0;
        for (std::size_t k = 0; k <= m; ++k) {
            const double eta = rep.eta_max * static_cast<double>(k) / static_cast<double>(m);
            auto eval = [eta](const Scaled& s) {
                const double y = std::pow(s.lambda, 0.25) * eta;
                return nm::interpolate_linear(s.y, s.u, y) / std::sqrt(s.lambda);
            };
            err = std::max(err, std::abs(eval(scaled[i]) - eval(scaled[i + 1])));
        }
        rep.pair_errors.push_back(err);
    }
    return rep;
}

SolverComparison compare_solvers(const vm::RunRecord& a, const vm::RunRecord& b, double tail_fraction,
                                 double x_fraction) {
    if (a.scenario_hash != b.scenario_hash)
        throw PreconditionError("compare_solvers: records come from different scenarios (" + a.scenario_hash + " vs " +
                                b.scenario_hash + ")");
    if (a.stations.empty() || b.stations.empty()) throw PreconditionError("compare_solvers: empty record");
    SolverComparison c;
    if (a.termination == vm::Termination::separated) c.xstar_vm = estimate_xstar(a, tail_fraction).xstar;
    if (b.termination == vm::Termination::separated) c.xstar_phys = estimate_xstar(b, tail_fraction).xstar;
    if (c.xstar_vm && c.xstar_phys) {
        c.xstar_rel_diff = std::abs(*c.xstar_vm - *c.xstar_phys) / std::min(*c.xstar_vm, *c.xstar_phys);
        c.x_limit = x_fraction * std::min(*c.xstar_vm, *c.xstar_phys);
    } else {
        c.x_limit = std::min(a.stations.back().x, b.stations.back().x);
    }
    const auto xb = b.xs();
    const auto tb = b.taus();
    for (const auto& s : a.stations) {
        if (s.x > c.x_limit || s.x > xb.back()) continue;
        const double other = nm::interpolate_linear(xb, tb, s.x);
        c.max_rel_tau_diff = std::max(c.max_rel_tau_diff, std::abs(s.tau_wall - other) / std::abs(other));
        ++c.compared;
    }
    return c;
}

}  // namespace prandtl::lab
