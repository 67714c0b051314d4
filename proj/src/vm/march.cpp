#include "prandtl/vm/march.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "prandtl/error.hpp"
#include "prandtl/numerics/stencils.hpp"
#include "prandtl/numerics/tridiagonal.hpp"

namespace prandtl::vm {

namespace nm = prandtl::numerics;

namespace {

StepOutcome reject(const VMState& state, std::string reason, int iterations) {
    StepOutcome out;
    out.status = StepStatus::rejected;
    out.state = state;
    out.iterations = iterations;
    out.reason = std::move(reason);
    return out;
}

std::string at_psi(const char* what, double psi, double value) {
    std::ostringstream s;
    s << what << " at psi = " << psi << " (" << value << ")";
    return s.str();
}

Station make_station(const VMState& s, const core::OuterFlow& flow, double k0) {
    Station st;
    st.x = s.x;
    st.tau_wall = 0.5 * wall_gradient(s);
    const auto f = curvature_field(s, flow.pressure_gradient(s.x));
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    st.min_uyy = *lo;
    st.max_uyy = *hi;
    st.continuation_margin = continuation_margin(s, std::min(k0, s.grid->psi_max()));
    st.dx = s.dx_last;
    return st;
}

}  // namespace

StepOutcome march_step(const VMState& state, const core::OuterFlow& flow, double dx, const StepOptions& options) {
    if (!(dx > 0.0)) throw PreconditionError("march_step: dx must be positive");
    const auto psi = state.psi();
    const std::size_t n = psi.size();
    const double x1 = state.x + dx;
    const double dp = flow.pressure_gradient(x1);

    double top = 0.0;
    if (options.pin_top) top = state.w.back();
    else if (options.top_value) top = options.top_value(x1);
    else top = flow.speed_squared(x1);
    const double scale = options.invariant_scale > 0.0 ? options.invariant_scale : std::max(state.w.back(), 1e-300);

    std::vector<nm::ThreePointWeights> d2(n);
    for (std::size_t j = 1; j + 1 < n; ++j) d2[j] = nm::second_derivative_weights(psi[j] - psi[j - 1], psi[j + 1] - psi[j]);

    std::vector<double> source(n, -2.0 * dp);
    if (options.forcing)
        for (std::size_t j = 1; j + 1 < n; ++j) source[j] += options.forcing(x1, psi[j]);

    const int max_iter = options.mode == StepMode::picard ? std::max(1, options.picard_max) : 1;
    std::vector<double> current = state.w;
    std::vector<double> next(n);
    nm::TridiagonalSystem sys(n);
    int iterations = 0;
    bool converged = options.mode == StepMode::semi_implicit;
    for (int it = 0; it < max_iter; ++it) {
        sys.diag[0] = 1.0;
        sys.upper[0] = 0.0;
        sys.rhs[0] = 0.0;
        sys.lower[n - 1] = 0.0;
        sys.diag[n - 1] = 1.0;
        sys.rhs[n - 1] = top;
        for (std::size_t j = 1; j + 1 < n; ++j) {
            const double a = dx * options.operator_scale * std::sqrt(std::max(current[j], 0.0));
            sys.lower[j] = -a * d2[j].left;
            sys.diag[j] = 1.0 - a * d2[j].centre;
            sys.upper[j] = -a * d2[j].right;
            sys.rhs[j] = state.w[j] + dx * source[j];
        }
        try {
            nm::solve_tridiagonal(sys, next);
        } catch (const NumericalError& e) {
            StepOutcome out;
            out.status = StepStatus::breakdown;
            out.state = state;
            out.iterations = it + 1;
            out.reason = e.what();
            return out;
        }
        ++iterations;
        double change = 0.0;
        for (std::size_t j = 0; j < n; ++j) change = std::max(change, std::abs(next[j] - current[j]));
        current.swap(next);
        if (options.mode == StepMode::picard && change < options.picard_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) return reject(state, "picard iteration did not converge", iterations);
    for (double v : current)
        if (!std::isfinite(v)) return reject(state, "non-finite value", iterations);

    if (options.check_invariants) {
        for (std::size_t j = 0; j < n; ++j)
            if (current[j] < -1e-8) return reject(state, at_psi("negative w", psi[j], current[j]), iterations);
        for (std::size_t j = 0; j + 1 < n; ++j)
            if (current[j + 1] - current[j] < -1e-10 * scale)
                return reject(state, at_psi("w decreasing", psi[j], current[j + 1] - current[j]), iterations);
        if (!options.forcing && !options.pin_top && !options.top_value) {
            for (std::size_t j = 0; j < n; ++j)
                if (current[j] > top + 1e-8) return reject(state, at_psi("w above U^2", psi[j], current[j]), iterations);
        }
    }

    StepOutcome out;
    out.status = StepStatus::accepted;
    out.iterations = iterations;
    out.state.grid = state.grid;
    out.state.x = x1;
    out.state.dx_last = dx;
    out.state.w = std::move(current);
    if (options.check_invariants && !(wall_gradient(out.state) > 0.0))
        return reject(state, "wall gradient not positive", iterations);
    return out;
}

RunRecord march_until_separation(const VMState& initial, const core::OuterFlow& flow, const MarchControls& c) {
    if (!(c.dx0 > 0.0) || !(c.dx_min > 0.0) || !(c.tau_stop_rel > 0.0))
        throw PreconditionError("march controls: dx0, dx_min and tau_stop_rel must be positive");
    if (c.dx_min >= c.dx0) throw PreconditionError("march controls: dx_min must be below dx0");
    double x_end = c.x_end;
    if (x_end <= 0.0) {
        if (!flow.x0()) throw PreconditionError("march controls: x_end is required without an adverse x0");
        x_end = *flow.x0();
    }
    if (flow.x0() && x_end > *flow.x0() * (1.0 + 1e-14))
        throw PreconditionError("march controls: x_end lies beyond x0 where U vanishes");
    if (x_end <= initial.x) throw PreconditionError("march controls: x_end must exceed the initial station");

    std::vector<double> targets;
    for (double s : c.snapshot_xs)
        if (s > initial.x && s <= x_end) targets.push_back(s);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::size_t next_target = 0;

    StepOptions opts = c.step;
    if (opts.invariant_scale <= 0.0) opts.invariant_scale = std::max(initial.w.back(), 1e-300);

    RunRecord rec;
    rec.solver = "vm";
    VMState state = initial;
    rec.stations.push_back(make_station(state, flow, c.continuation_k0));
    for (double s : c.snapshot_xs)
        if (s == initial.x) rec.snapshots.push_back(state);
    const double tau0 = rec.stations.front().tau_wall;

    double dx = c.dx0;
    int streak = 0;
    std::size_t accepted = 0;
    std::string last_reason;
    for (std::size_t step = 0; step < c.max_steps; ++step) {
        if (state.x >= x_end) {
            rec.termination = Termination::reached_x_end;
            return rec;
        }
        double h = std::min(dx, x_end - state.x);
        bool landing = false;
        if (next_target < targets.size() && targets[next_target] <= state.x + h) {
            h = targets[next_target] - state.x;
            landing = true;
        }
        const bool final_step = !landing && h == x_end - state.x;
        auto out = march_step(state, flow, h, opts);
        if (out.status == StepStatus::breakdown) {
            rec.termination = Termination::invariant_violation;
            rec.message = "solver breakdown at x = " + std::to_string(state.x) + ": " + out.reason;
            return rec;
        }
        const double tau_prev = rec.stations.back().tau_wall;
        bool ok = out.accepted();
        double tau_new = 0.0;
        if (ok) {
            tau_new = 0.5 * wall_gradient(out.state);
            // The first step carries the discrete start-up adjustment at the wall; guard later steps only.
            if (c.tau_change_max > 0.0 && accepted > 0 && std::abs(tau_new - tau_prev) > c.tau_change_max * tau_prev) {
                ok = false;
                out.reason = "wall shear changed too fast";
            }
        }
        if (!ok) {
            last_reason = out.reason;
            streak = 0;
            dx = 0.5 * h;
            if (dx < c.dx_min) {
                const std::size_t m = rec.stations.size();
                const bool decreasing = m >= 2 && rec.stations[m - 1].tau_wall < rec.stations[m - 2].tau_wall;
                rec.termination = decreasing ? Termination::separated : Termination::step_underflow;
                rec.message = "step underflow at x = " + std::to_string(state.x) + ": " + last_reason;
                return rec;
            }
            continue;
        }

        state = std::move(out.state);
        if (final_step) state.x = x_end;
        rec.stations.push_back(make_station(state, flow, c.continuation_k0));
        ++accepted;
        if (landing) {
            state.x = targets[next_target];
            rec.stations.back().x = state.x;
            rec.snapshots.push_back(state);
            ++next_target;
        } else if (c.snapshot_stride > 0 && accepted % c.snapshot_stride == 0) {
            rec.snapshots.push_back(state);
        }
        if (++streak >= 10) {
            dx = std::min(1.2 * dx, c.dx0);
            streak = 0;
        }
        if (tau_new < c.tau_stop_rel * tau0) {
            rec.termination = Termination::separated;
            rec.message = "wall shear below stop fraction";
            return rec;
        }
    }
    rec.termination = Termination::step_underflow;
    rec.message = "step budget exhausted";
    return rec;
}

}  // namespace prandtl::vm
