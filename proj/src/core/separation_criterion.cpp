#include "prandtl/core/separation_criterion.hpp"

#include <algorithm>
#include <cmath>

#include "prandtl/error.hpp"
#include "prandtl/numerics/stencils.hpp"

namespace prandtl::core {

double default_epsilon0(double mu, double B) {
    if (!(B > 0.0)) throw PreconditionError("B must be positive");
    return mu * mu / (2.0 * B);
}

SeparationCriterionReport check_separation_condition(const WallProfile& profile, const OuterFlow& flow, double mu,
                                                     double B, double epsilon0) {
    if (!flow.is_adverse()) throw PreconditionError("separation criterion needs an adverse flow with finite x0");
    if (!(mu > 0.0 && mu < 1.0)) throw PreconditionError("mu must lie in (0, 1)");
    if (!(B > 0.0) || !(epsilon0 > 0.0)) throw PreconditionError("B and epsilon0 must be positive");
    const double x0 = *flow.x0();

    SeparationCriterionReport r;
    r.B = B;
    r.epsilon0 = epsilon0;
    r.mu = mu;
    r.psi0 = B * std::pow(x0, 0.75);
    r.y0 = profile.y_of_mass(r.psi0);
    r.threshold = 0.5 * epsilon0 * std::pow(x0, 0.25);

    const auto y = profile.y();
    const auto du = profile.du();
    double sup = std::max(0.0, numerics::interpolate_linear(y, du, r.y0));
    for (std::size_t i = 0; i < y.size() && y[i] <= r.y0; ++i) sup = std::max(sup, du[i]);
    r.slope_sup = sup;
    r.satisfied = r.slope_sup <= r.threshold;
    return r;
}

}  // namespace prandtl::core
