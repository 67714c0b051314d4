#pragma once

#include <string>
#include <vector>

#include "prandtl/core/outer_flow.hpp"
#include "prandtl/core/wall_profile.hpp"
#include "prandtl/vm/run_record.hpp"

namespace prandtl::phys {

/// Primitive-variable state on a uniform y-grid.
struct PhysState {
    double x = 0.0;
    double dx_last = 0.0;
    std::vector<double> y;
    std::vector<double> u;
    std::vector<double> v;

    [[nodiscard]] double spacing() const { return y[1] - y[0]; }
};

/// Samples the profile on a uniform grid of `points` nodes on [0, y_max]; v = 0.
[[nodiscard]] PhysState initial_state(const core::WallProfile& profile, double y_max, std::size_t points);

struct PhysStepOptions {
    bool picard = true;
    int picard_max = 30;
    double picard_tol = 1e-10;
};

struct PhysStepOutcome {
    bool accepted = false;
    PhysState state;
    int iterations = 0;
    std::string reason;
};

/// Implicit step of u u_x + v u_y - u_yy + p' = 0 with v = -int_0^y u_x. Rejects on loss of
/// positivity of u at interior nodes or Picard non-convergence. Throws PreconditionError for dx <= 0.
[[nodiscard]] PhysStepOutcome march_step_physical(const PhysState& state, const core::OuterFlow& flow, double dx,
                                                  const PhysStepOptions& options = {});

/// u_y(x, 0) from the one-sided three-point stencil.
[[nodiscard]] double wall_shear(const PhysState& state);

/// max |u_x + v_y| over interior nodes between two consecutive states (centred v_y).
[[nodiscard]] double continuity_residual(const PhysState& before, const PhysState& after);

struct PhysControls {
    double dx0 = 1e-3;
    double dx_min = 1e-12;
    double tau_stop_rel = 0.01;
    double x_end = 0.0;             // 0 selects x0 for adverse flows
    double tau_change_max = 0.02;
    double y_max = 0.0;             // <= 0: thickness_factor times the inflow 99% thickness
    double thickness_factor = 3.0;
    std::size_t y_points = 2048;
    double continuation_k0 = 1.0;
    std::size_t max_steps = 2000000;
    PhysStepOptions step;
};

/// Adaptive march with the vm-solver step-control contract. Returns a RunRecord with solver "phys".
[[nodiscard]] vm::RunRecord run_physical(const core::WallProfile& profile, const core::OuterFlow& flow,
                                         const PhysControls& controls);

}  // namespace prandtl::phys
