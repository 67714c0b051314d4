#include "prandtl/numerics/stencils.hpp"

#include <algorithm>
#include <cmath>

#include "prandtl/error.hpp"
#include "prandtl/numerics/least_squares.hpp"

namespace prandtl::numerics {

ThreePointWeights second_derivative_weights(double hm, double hp) {
    const double s = hm + hp;
    return {2.0 / (hm * s), -2.0 / (hm * hp), 2.0 / (hp * s)};
}

ThreePointWeights first_derivative_weights(double hm, double hp) {
    const double s = hm + hp;
    return {-hp / (hm * s), (hp - hm) / (hm * hp), hm / (hp * s)};
}

ThreePointWeights forward_first_derivative_weights(double h1, double h2) {
    const double s = h1 + h2;
    return {-(2.0 * h1 + h2) / (h1 * s), s / (h1 * h2), -h1 / (h2 * s)};
}

ThreePointWeights backward_first_derivative_weights(double h_far, double h_near) {
    // Mirror of the forward formula: nodes x_n, x_{n-1}, x_{n-2} at distances 0, h_near, h_near + h_far.
    const ThreePointWeights f = forward_first_derivative_weights(h_near, h_far);
    return {-f.right, -f.centre, -f.left};
}

std::vector<double> nodal_gradient(std::span<const double> x, std::span<const double> f) {
    const std::size_t n = x.size();
    if (n < 3 || f.size() != n) throw PreconditionError("nodal_gradient: need at least 3 matching samples");
    std::vector<double> g(n);
    const auto w0 = forward_first_derivative_weights(x[1] - x[0], x[2] - x[1]);
    g[0] = w0.left * f[0] + w0.centre * f[1] + w0.right * f[2];
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const auto w = first_derivative_weights(x[j] - x[j - 1], x[j + 1] - x[j]);
        g[j] = w.left * f[j - 1] + w.centre * f[j] + w.right * f[j + 1];
    }
    const auto wn = backward_first_derivative_weights(x[n - 2] - x[n - 3], x[n - 1] - x[n - 2]);
    g[n - 1] = wn.left * f[n - 3] + wn.centre * f[n - 2] + wn.right * f[n - 1];
    return g;
}

std::vector<double> nodal_second_derivative(std::span<const double> x, std::span<const double> f) {
    const std::size_t n = x.size();
    if (n < 3 || f.size() != n) throw PreconditionError("nodal_second_derivative: need at least 3 matching samples");
    std::vector<double> d(n);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const auto w = second_derivative_weights(x[j] - x[j - 1], x[j + 1] - x[j]);
        d[j] = w.left * f[j - 1] + w.centre * f[j] + w.right * f[j + 1];
    }
    d[0] = d[1];
    d[n - 1] = d[n - 2];
    return d;
}

double hermite_value(double f0, double f1, double d0, double d1, double h, double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * d1;
}

double hermite_slope(double f0, double f1, double d0, double d1, double h, double t) {
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * h * d0 + (-6 * t2 + 6 * t) * f1 + (3 * t2 - 2 * t) * h * d1) / h;
}

double hermite_integral(double f0, double f1, double d0, double d1, double h, double t) {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    return h * ((0.5 * t4 - t3 + t) * f0 + (0.25 * t4 - 2.0 * t3 / 3.0 + 0.5 * t2) * h * d0 + (-0.5 * t4 + t3) * f1 +
                (0.25 * t4 - t3 / 3.0) * h * d1);
}

std::size_t bracket(std::span<const double> x, double value) {
    const std::size_t n = x.size();
    if (n < 2) throw PreconditionError("bracket: need at least two nodes");
    if (value <= x[0]) return 0;
    if (value >= x[n - 1]) return n - 2;
    const auto it = std::upper_bound(x.begin(), x.end(), value);
    return static_cast<std::size_t>(std::distance(x.begin(), it)) - 1;
}

double interpolate_linear(std::span<const double> x, std::span<const double> f, double value) {
    if (value <= x.front()) return f.front();
    if (value >= x.back()) return f.back();
    const std::size_t k = bracket(x, value);
    const double t = (value - x[k]) / (x[k + 1] - x[k]);
    return f[k] + t * (f[k + 1] - f[k]);
}

std::vector<double> wall_taylor_fit(std::span<const double> x, std::span<const double> f, int degree,
                                    std::size_t points) {
    points = std::min(points, x.size());
    if (degree < 1 || points < static_cast<std::size_t>(degree + 1))
        throw PreconditionError("wall_taylor_fit: not enough samples for the requested degree");
    // Scale abscissae by the fit span to keep the Vandermonde matrix well conditioned.
    const double scale = x[points - 1] - x[0];
    DenseMatrix a(points, static_cast<std::size_t>(degree + 1));
    std::vector<double> b(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = (x[i] - x[0]) / scale;
        double p = 1.0;
        for (int k = 0; k <= degree; ++k) {
            a(i, static_cast<std::size_t>(k)) = p;
            p *= t;
        }
        b[i] = f[i];
    }
    const auto c = solve_least_squares(a, b).coefficients;
    std::vector<double> derivs(4, 0.0);
    double factorial = 1.0;
    for (int k = 0; k <= std::min(degree, 3); ++k) {
        if (k > 0) factorial *= k;
        derivs[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] * factorial / std::pow(scale, k);
    }
    return derivs;
}

double quintic_cutoff(double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

double quintic_cutoff_d1(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return -30.0 * s * s * (1.0 - s) * (1.0 - s);
}

double quintic_cutoff_d2(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return -60.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
}

}  // namespace prandtl::numerics
