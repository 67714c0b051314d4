#include "prandtl/numerics/tridiagonal.hpp"

#include <cmath>
#include <limits>

#include "prandtl/error.hpp"

namespace prandtl::numerics {

void solve_tridiagonal(const TridiagonalSystem& s, std::span<double> x) {
    const std::size_t n = s.size();
    if (x.size() != n) throw PreconditionError("solve_tridiagonal: solution size mismatch");
    if (n == 0) return;
    std::vector<double> c(n), d(n);
    double pivot = s.diag[0];
    constexpr double tiny = std::numeric_limits<double>::min() * 1e4;
    if (!(std::abs(pivot) > tiny)) throw NumericalError("solve_tridiagonal: zero pivot at row 0");
    c[0] = s.upper[0] / pivot;
    d[0] = s.rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = s.diag[i] - s.lower[i] * c[i - 1];
        if (!(std::abs(pivot) > tiny) || !std::isfinite(pivot))
            throw NumericalError("solve_tridiagonal: zero pivot at row " + std::to_string(i));
        c[i] = s.upper[i] / pivot;
        d[i] = (s.rhs[i] - s.lower[i] * d[i - 1]) / pivot;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
}

}  // namespace prandtl::numerics
