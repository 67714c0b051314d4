#include "prandtl/lab/mu.hpp"

#include <algorithm>
#include <cmath>

#include "prandtl/error.hpp"
#include "prandtl/numerics/stencils.hpp"

namespace prandtl::lab {

double mu_map(std::span<const double> y, std::span<const double> du, double v) {
    const double top = std::pow(std::max(v, 0.0), 0.25);
    double m = std::pow(du[0], 4);
    for (std::size_t i = 1; i < y.size() && y[i] <= top; ++i) m = std::min(m, std::pow(du[i], 4));
    if (top > 0.0) m = std::min(m, std::pow(numerics::interpolate_linear(y, du, top), 4));
    return m;
}

MuResult mu_of_x(std::span<const double> y, std::span<const double> du, double tol) {
    if (y.size() < 2 || du.size() != y.size()) throw PreconditionError("mu_of_x: need matching samples");
    if (!(du[0] > 0.0)) throw NumericalError("mu_of_x: wall shear is not positive (at or past separation)");
    double lo = 0.0, hi = std::pow(du[0], 4);
    MuResult r;
    while (hi - lo > tol && r.iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        if (mid - mu_map(y, du, mid) < 0.0) lo = mid;
        else hi = mid;
        ++r.iterations;
    }
    r.mu = hi;
    r.residual = std::abs(r.mu - mu_map(y, du, r.mu));
    return r;
}

}  // namespace prandtl::lab
