#pragma once

#include <span>
#include <vector>

namespace prandtl::numerics {

/// Tridiagonal system: lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// lower[0] and upper[n-1] are ignored.
struct TridiagonalSystem {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
    std::vector<double> rhs;

    explicit TridiagonalSystem(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0) {}
    [[nodiscard]] std::size_t size() const { return diag.size(); }
};

/// Thomas algorithm. Throws NumericalError on a vanishing pivot.
void solve_tridiagonal(const TridiagonalSystem& system, std::span<double> solution);

}  // namespace prandtl::numerics
