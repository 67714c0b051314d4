#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prandtl/core/outer_flow.hpp"
#include "prandtl/vm/run_record.hpp"
#include "prandtl/vm/state.hpp"

namespace prandtl::vm {

enum class StepMode { semi_implicit, picard };

struct StepOptions {
    StepMode mode = StepMode::semi_implicit;
    int picard_max = 8;
    double picard_tol = 1e-10;
    /// Extra source S(x, psi) on the right-hand side.
    std::function<double(double, double)> forcing;
    /// Top boundary value at psi_max; defaults to U(x)^2. `pin_top` keeps the incoming value.
    std::function<double(double)> top_value;
    bool pin_top = false;
    /// Scale for the invariant tolerances (U(0)^2); <= 0 uses the incoming top value.
    double invariant_scale = 0.0;
    /// Skip positivity/monotonicity rejection (manufactured problems with arbitrary data).
    bool check_invariants = true;
    /// Test hook: multiplies the diffusion stencil.
    double operator_scale = 1.0;
};

enum class StepStatus { accepted, rejected, breakdown };

struct StepOutcome {
    StepStatus status = StepStatus::rejected;
    VMState state;
    int iterations = 0;
    std::string reason;
    [[nodiscard]] bool accepted() const { return status == StepStatus::accepted; }
};

/// Backward-Euler step of w_x = sqrt(w) w_psipsi - 2 p'(x) (+ forcing).
[[nodiscard]] StepOutcome march_step(const VMState& state, const core::OuterFlow& flow, double dx,
                                     const StepOptions& options = {});

struct MarchControls {
    double dx0 = 1e-3;
    double dx_min = 1e-12;
    double tau_stop_rel = 0.01;
    double x_end = 0.0;              // 0 selects x0 for adverse flows
    std::vector<double> snapshot_xs;
    std::size_t snapshot_stride = 0;  // also keep every n-th accepted state (0 disables)
    double tau_change_max = 0.02;     // reject steps changing wall shear by more than this fraction
    double continuation_k0 = 1.0;
    std::size_t max_steps = 2000000;
    StepOptions step;
};

/// Adaptive march to separation, x_end, or failure.
[[nodiscard]] RunRecord march_until_separation(const VMState& initial, const core::OuterFlow& flow,
                                               const MarchControls& controls);

}  // namespace prandtl::vm
