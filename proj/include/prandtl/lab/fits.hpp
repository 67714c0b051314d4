#pragma once

#include <span>
#include <string>
#include <vector>

#include "prandtl/vm/run_record.hpp"

namespace prandtl::lab {

enum class FitMethod { free_alpha, fixed_alpha, fixed_xstar };

/// tau = A (X* - x)^alpha fitted on a window of stations.
struct RateFit {
    double A = 0.0;
    double alpha = 0.0;
    double xstar = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    double residual = 0.0;    // RMS of the log-space misfit
    double C_estimate = 0.0;  // sup tau / (X* - x)^{1/4} over the window (fixed_xstar fits)
    std::size_t stations = 0;
    int iterations = 0;
    FitMethod method = FitMethod::free_alpha;
};

/// Three-parameter log-space Levenberg-Marquardt fit on the trailing tail_fraction of stations.
/// Starts from X* extrapolated linearly in tau^2 and tau^4 with alpha = 1/2 and keeps the
/// better result. Throws PreconditionError unless the record separated with >= 20 tail stations.
[[nodiscard]] RateFit estimate_xstar(const vm::RunRecord& record, double tail_fraction);
[[nodiscard]] RateFit estimate_xstar(std::span<const double> x, std::span<const double> tau);

/// Same with alpha held fixed (two parameters).
[[nodiscard]] RateFit estimate_xstar_fixed_alpha(std::span<const double> x, std::span<const double> tau, double alpha);

/// Linear least squares of log tau against log(X* - x) on stations with x_lo <= x <= x_hi.
/// Needs x_hi < xstar and at least 10 stations.
[[nodiscard]] RateFit fit_rate_exponent(const vm::RunRecord& record, double xstar, double x_lo, double x_hi);
[[nodiscard]] RateFit fit_rate_exponent(std::span<const double> x, std::span<const double> tau, double xstar,
                                        double x_lo, double x_hi);

struct GoldsteinFit {
    std::vector<double> coefficients;  // alpha_1 [, alpha_2]
    double residual = 0.0;             // RMS misfit in tau
    std::size_t stations = 0;
};

/// tau ~ a1 s^{1/2} [+ a2 s^{3/4}], s = X* - x, on stations with s in [s_lo, s_hi].
/// Throws NumericalError on rank deficiency and PreconditionError with fewer than 20 stations.
[[nodiscard]] GoldsteinFit goldstein_fit(std::span<const double> x, std::span<const double> tau, double xstar,
                                         int n_terms, double s_lo, double s_hi);
[[nodiscard]] GoldsteinFit goldstein_fit(const vm::RunRecord& record, double xstar, int n_terms, double s_lo,
                                         double s_hi);

}  // namespace prandtl::lab
