#pragma once

#include <string>
#include <vector>

namespace prandtl::cli {

struct BatteryCheck {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct BatteryOptions {
    double operator_scale = 1.0;  // test hook: scales the diffusion operator
    std::size_t stationarity_steps = 2000;
};

/// Self-checks of the marching schemes against closed forms and manufactured solutions.
[[nodiscard]] std::vector<BatteryCheck> run_validation_battery(const BatteryOptions& options = {});

/// Max-norm error at x_end of the forced scheme on a manufactured solution, used for order measurements.
struct ManufacturedCase {
    enum class Solution { quadratic, exponential } solution = Solution::quadratic;
    std::size_t intervals = 64;
    double grading = 1.0;
    double dx = 0.05;
    double x_end = 1.0;
    bool picard = false;
    double operator_scale = 1.0;
};
[[nodiscard]] double manufactured_error(const ManufacturedCase& c);

/// Largest per-step change of w (relative to psi_max) over `steps` steps from w = psi, p' = 0, pinned top.
[[nodiscard]] double stationarity_drift(std::size_t intervals, double grading, std::size_t steps, double dx,
                                        double operator_scale = 1.0);

}  // namespace prandtl::cli
