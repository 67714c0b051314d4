#pragma once

#include "prandtl/core/outer_flow.hpp"
#include "prandtl/core/wall_profile.hpp"

namespace prandtl::core {

struct SeparationCriterionReport {
    double B = 0.0;
    double epsilon0 = 0.0;
    double mu = 0.0;
    double psi0 = 0.0;       // B x0^{3/4}
    double y0 = 0.0;         // int_0^{y0} u0 = psi0
    double slope_sup = 0.0;  // sup of u0' on [0, y0]
    double threshold = 0.0;  // epsilon0 x0^{1/4} / 2
    bool satisfied = false;
};

/// epsilon0 = mu^2 / (2 B).
[[nodiscard]] double default_epsilon0(double mu, double B);

/// Small-slope criterion for separation before x0. Throws InsufficientMass when psi0 exceeds
/// the profile's available mass and PreconditionError outside adverse mode.
[[nodiscard]] SeparationCriterionReport check_separation_condition(const WallProfile& profile, const OuterFlow& flow,
                                                                   double mu, double B, double epsilon0);

}  // namespace prandtl::core
