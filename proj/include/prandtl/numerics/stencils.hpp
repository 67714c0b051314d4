#pragma once

#include <span>
#include <vector>

namespace prandtl::numerics {

/// Three-point weights on a non-uniform grid around an interior node:
/// f'(x_j) or f''(x_j) ~ left*f[j-1] + centre*f[j] + right*f[j+1].
struct ThreePointWeights {
    double left = 0.0;
    double centre = 0.0;
    double right = 0.0;
};

/// Second derivative, exact on quadratics. h_minus = x_j - x_{j-1}, h_plus = x_{j+1} - x_j.
[[nodiscard]] ThreePointWeights second_derivative_weights(double h_minus, double h_plus);

/// Centred first derivative, exact on quadratics.
[[nodiscard]] ThreePointWeights first_derivative_weights(double h_minus, double h_plus);

/// One-sided first derivative at x_0 from x_0, x_1, x_2 (exact on quadratics).
/// Returned as (w0, w1, w2) in (left, centre, right).
[[nodiscard]] ThreePointWeights forward_first_derivative_weights(double h1, double h2);

/// One-sided first derivative at x_n from x_{n-2}, x_{n-1}, x_n.
[[nodiscard]] ThreePointWeights backward_first_derivative_weights(double h_far, double h_near);

/// Nodal first derivative of f on the grid x (second order, one-sided at the ends).
[[nodiscard]] std::vector<double> nodal_gradient(std::span<const double> x, std::span<const double> f);

/// Nodal second derivative (interior: three-point; ends: copied from the adjacent node).
[[nodiscard]] std::vector<double> nodal_second_derivative(std::span<const double> x, std::span<const double> f);

/// Cubic Hermite interpolant on [x0, x0+h] at local coordinate t in [0,1].
[[nodiscard]] double hermite_value(double f0, double f1, double d0, double d1, double h, double t);
[[nodiscard]] double hermite_slope(double f0, double f1, double d0, double d1, double h, double t);
/// Integral of the Hermite interpolant from x0 to x0 + t h.
[[nodiscard]] double hermite_integral(double f0, double f1, double d0, double d1, double h, double t);

/// Index k with x[k] <= value < x[k+1], clamped to [0, n-2]. x must be increasing.
[[nodiscard]] std::size_t bracket(std::span<const double> x, double value);

/// Piecewise-linear interpolation, constant extrapolation outside the range.
[[nodiscard]] double interpolate_linear(std::span<const double> x, std::span<const double> f, double value);

/// Derivatives f(0), f'(0), f''(0), f'''(0) of the least-squares polynomial of the given
/// degree through the first `points` samples.
[[nodiscard]] std::vector<double> wall_taylor_fit(std::span<const double> x, std::span<const double> f,
                                                  int degree, std::size_t points);

/// Quintic smoothstep cutoff: 1 for s <= 0, 0 for s >= 1, 1 - 10 s^3 + 15 s^4 - 6 s^5 between.
[[nodiscard]] double quintic_cutoff(double s);
[[nodiscard]] double quintic_cutoff_d1(double s);
[[nodiscard]] double quintic_cutoff_d2(double s);

}  // namespace prandtl::numerics
