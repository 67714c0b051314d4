#pragma once

#include <span>

namespace prandtl::lab {

struct MuResult {
    double mu = 0.0;
    double residual = 0.0;  // |mu - g(mu)|
    int iterations = 0;
};

/// g(v) = min over y in [0, v^{1/4}] of (u_y)^4, native samples plus the interpolated endpoint.
[[nodiscard]] double mu_map(std::span<const double> y, std::span<const double> du, double v);

/// Fixed point mu = g(mu) by bisection of v - g(v) on [0, u_y(0)^4]. Throws NumericalError when
/// u_y(0) <= 0.
[[nodiscard]] MuResult mu_of_x(std::span<const double> y, std::span<const double> du, double tol = 1e-12);

}  // namespace prandtl::lab
