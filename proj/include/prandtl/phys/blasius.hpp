#pragma once

#include <vector>

#include "prandtl/core/wall_profile.hpp"

namespace prandtl::phys {

/// Similarity solution of f''' + f f'' / 2 = 0, f(0) = f'(0) = 0, f'(inf) = 1.
struct BlasiusReference {
    double fpp0 = 0.0;
    double eta_max = 0.0;
    std::vector<double> eta, f, fp, fpp;

    /// f'(eta) by Hermite interpolation, 1 beyond eta_max.
    [[nodiscard]] double velocity(double eta) const;
    [[nodiscard]] double shear(double eta) const;
    /// Smallest eta with f' >= 0.99.
    [[nodiscard]] double thickness99() const;
};

/// RK4 shooting with bisection on f''(0). Throws PreconditionError for eta_max < 8 and
/// NumericalError when the bracket fails or the far-field check misses by more than 1e-8.
[[nodiscard]] BlasiusReference blasius_reference(double eta_max = 12.0, double tol = 1e-13, double step = 1e-3);

/// Inflow u0(y) = f'(y / sqrt(x_a)), the Blasius layer at distance x_a from its virtual origin.
[[nodiscard]] core::WallProfile blasius_profile(const BlasiusReference& ref, double x_a, double y_max,
                                                std::size_t points = 8001);

}  // namespace prandtl::phys
