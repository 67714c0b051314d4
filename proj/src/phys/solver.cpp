#include "prandtl/phys/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "prandtl/error.hpp"
#include "prandtl/numerics/tridiagonal.hpp"

namespace prandtl::phys {

namespace {

std::vector<double> normal_velocity(const std::vector<double>& u_new, const std::vector<double>& u_old, double dx,
                                    double h) {
    std::vector<double> v(u_new.size(), 0.0);
    for (std::size_t j = 0; j + 1 < u_new.size(); ++j) {
        const double a = (u_new[j] - u_old[j]) / dx;
        const double b = (u_new[j + 1] - u_old[j + 1]) / dx;
        v[j + 1] = v[j] - 0.5 * h * (a + b);
    }
    return v;
}

vm::Station make_station(const PhysState& s, const core::OuterFlow& flow, double k0) {
    const double h = s.spacing();
    const auto& u = s.u;
    vm::Station st;
    st.x = s.x;
    st.dx = s.dx_last;
    st.tau_wall = wall_shear(s);
    double lo = flow.pressure_gradient(s.x), hi = lo;
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        const double c = (u[j - 1] - 2.0 * u[j] + u[j + 1]) / (h * h);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    st.min_uyy = lo;
    st.max_uyy = hi;
    // dw/dpsi = 2 u_y on psi = int u dy <= k0.
    double psi = 0.0, margin = 2.0 * st.tau_wall;
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        psi += 0.5 * h * (u[j - 1] + u[j]);
        if (psi > k0) break;
        margin = std::min(margin, (u[j + 1] - u[j - 1]) / h);
    }
    st.continuation_margin = margin;
    return st;
}

}  // namespace

PhysState initial_state(const core::WallProfile& profile, double y_max, std::size_t points) {
    if (points < 8 || !(y_max > 0.0)) throw PreconditionError("initial_state: bad grid");
    PhysState s;
    s.y.resize(points);
    s.u.resize(points);
    s.v.assign(points, 0.0);
    for (std::size_t j = 0; j < points; ++j) {
        s.y[j] = y_max * static_cast<double>(j) / static_cast<double>(points - 1);
        s.u[j] = s.y[j] >= profile.y_max() ? profile.far_field() : profile.value_at(s.y[j]);
    }
    s.u[0] = 0.0;
    return s;
}

double wall_shear(const PhysState& s) {
    const double h = s.spacing();
    return (-3.0 * s.u[0] + 4.0 * s.u[1] - s.u[2]) / (2.0 * h);
}

double continuity_residual(const PhysState& before, const PhysState& after) {
    const double dx = after.x - before.x;
    const double h = after.spacing();
    double r = 0.0;
    for (std::size_t j = 1; j + 1 < after.u.size(); ++j) {
        const double ux = (after.u[j] - before.u[j]) / dx;
        const double vy = (after.v[j + 1] - after.v[j - 1]) / (2.0 * h);
        r = std::max(r, std::abs(ux + vy));
    }
    return r;
}

PhysStepOutcome march_step_physical(const PhysState& state, const core::OuterFlow& flow, double dx,
                                    const PhysStepOptions& options) {
    if (!(dx > 0.0)) throw PreconditionError("march_step_physical: dx must be positive");
    const std::size_t n = state.u.size();
    const double h = state.spacing();
    const double x1 = state.x + dx;
    const double dp = flow.pressure_gradient(x1);
    const double top = flow.speed(x1);

    PhysStepOutcome out;
    std::vector<double> cu = state.u, cv = state.v, next(n);
    numerics::TridiagonalSystem sys(n);
    const int max_iter = options.picard ? std::max(1, options.picard_max) : 1;
    bool converged = !options.picard;
    for (int it = 0; it < max_iter; ++it) {
        sys.diag[0] = 1.0;
        sys.upper[0] = 0.0;
        sys.rhs[0] = 0.0;
        sys.lower[n - 1] = 0.0;
        sys.diag[n - 1] = 1.0;
        sys.rhs[n - 1] = top;
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const double c = cu[j] / dx;
            sys.lower[j] = -cv[j] / (2.0 * h) - 1.0 / (h * h);
            sys.diag[j] = c + 2.0 / (h * h);
            sys.upper[j] = cv[j] / (2.0 * h) - 1.0 / (h * h);
            sys.rhs[j] = c * state.u[j] - dp;
        }
        try {
            numerics::solve_tridiagonal(sys, next);
        } catch (const NumericalError& e) {
            out.state = state;
            out.reason = e.what();
            out.iterations = it + 1;
            return out;
        }
        ++out.iterations;
        double change = 0.0;
        for (std::size_t j = 0; j < n; ++j) change = std::max(change, std::abs(next[j] - cu[j]));
        cu = next;
        cv = normal_velocity(cu, state.u, dx, h);
        if (options.picard && change < options.picard_tol) {
            converged = true;
            break;
        }
    }
    out.state = state;
    if (!converged) {
        out.reason = "picard iteration did not converge";
        return out;
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
        if (!(cu[j] > 0.0)) {
            std::ostringstream msg;
            msg << "u not positive at y = " << state.y[j];
            out.reason = msg.str();
            return out;
        }
    }
    out.accepted = true;
    out.state.x = x1;
    out.state.dx_last = dx;
    out.state.u = std::move(cu);
    out.state.v = std::move(cv);
    return out;
}

vm::RunRecord run_physical(const core::WallProfile& profile, const core::OuterFlow& flow, const PhysControls& c) {
    if (!(c.dx0 > 0.0) || !(c.dx_min > 0.0) || !(c.tau_stop_rel > 0.0))
        throw PreconditionError("physical controls: dx0, dx_min and tau_stop_rel must be positive");
    if (c.dx_min >= c.dx0) throw PreconditionError("physical controls: dx_min must be below dx0");
    double x_end = c.x_end;
    if (x_end <= 0.0) {
        if (!flow.x0()) throw PreconditionError("physical controls: x_end is required without an adverse x0");
        x_end = *flow.x0();
    }
    if (flow.x0() && x_end > *flow.x0() * (1.0 + 1e-14))
        throw PreconditionError("physical controls: x_end lies beyond x0 where U vanishes");
    const double y_max = c.y_max > 0.0 ? c.y_max : c.thickness_factor * profile.thickness(0.99);

    PhysState state = initial_state(profile, y_max, c.y_points);
    vm::RunRecord rec;
    rec.solver = "phys";
    rec.stations.push_back(make_station(state, flow, c.continuation_k0));
    const double tau0 = rec.stations.front().tau_wall;

    double dx = c.dx0;
    int streak = 0;
    std::string last_reason;
    for (std::size_t step = 0; step < c.max_steps; ++step) {
        if (state.x >= x_end) {
            rec.termination = vm::Termination::reached_x_end;
            return rec;
        }
        const double hx = std::min(dx, x_end - state.x);
        const bool final_step = hx == x_end - state.x;
        auto out = march_step_physical(state, flow, hx, c.step);
        const double tau_prev = rec.stations.back().tau_wall;
        double tau_new = 0.0;
        bool ok = out.accepted;
        if (ok) {
            tau_new = wall_shear(out.state);
            if (!(tau_new > 0.0)) {
                ok = false;
                out.reason = "wall shear not positive";
            } else if (c.tau_change_max > 0.0 && rec.stations.size() > 1 &&
                       std::abs(tau_new - tau_prev) > c.tau_change_max * tau_prev) {
                ok = false;
                out.reason = "wall shear changed too fast";
            }
        }
        if (!ok) {
            last_reason = out.reason;
            streak = 0;
            dx = 0.5 * hx;
            if (dx < c.dx_min) {
                const std::size_t m = rec.stations.size();
                const bool decreasing = m >= 2 && rec.stations[m - 1].tau_wall < rec.stations[m - 2].tau_wall;
                rec.termination = decreasing ? vm::Termination::separated : vm::Termination::step_underflow;
                rec.message = "step underflow at x = " + std::to_string(state.x) + ": " + last_reason;
                return rec;
            }
            continue;
        }
        state = std::move(out.state);
        if (final_step) state.x = x_end;
        rec.stations.push_back(make_station(state, flow, c.continuation_k0));
        if (++streak >= 10) {
            dx = std::min(1.2 * dx, c.dx0);
            streak = 0;
        }
        if (tau_new < c.tau_stop_rel * tau0) {
            rec.termination = vm::Termination::separated;
            rec.message = "wall shear below stop fraction";
            return rec;
        }
    }
    rec.termination = vm::Termination::step_underflow;
    rec.message = "step budget exhausted";
    return rec;
}

}  // namespace prandtl::phys
