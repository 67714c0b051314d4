#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "prandtl/core/wall_profile.hpp"
#include "prandtl/vm/psi_grid.hpp"

namespace prandtl::vm {

/// w = u^2 on a PsiGrid at station x. Grids are shared read-only between states.
struct VMState {
    std::shared_ptr<const PsiGrid> grid;
    double x = 0.0;
    double dx_last = 0.0;
    std::vector<double> w;

    [[nodiscard]] std::span<const double> psi() const { return grid->nodes(); }
};

/// psi_max such that U(0)^2 - w0(psi_max) < 1e-3 U(0)^2, padded by `padding` and capped by
/// the profile's total mass.
[[nodiscard]] double auto_psi_max(const core::WallProfile& profile, double padding = 1.5);

/// w(psi_j) = u0(y(psi_j))^2 with y(psi) inverting the profile's cumulative mass.
[[nodiscard]] VMState to_von_mises(const core::WallProfile& profile, std::shared_ptr<const PsiGrid> grid);

struct PhysicalSamples {
    std::vector<double> y_nodes;  // y(psi_j)
    std::vector<double> y;        // uniform output grid on [0, y(psi_max)]
    std::vector<double> u;
    std::vector<double> du;       // u_y = (dw/dpsi) / 2
};

/// Physical-variable view of a state: y(psi) = int dpsi / sqrt(w), with w ~ g psi on the first
/// interval. Throws NumericalError when w <= 0 at an interior node or the wall gradient is not positive.
[[nodiscard]] PhysicalSamples from_von_mises(const VMState& state, std::size_t y_points);

/// dw/dpsi at psi = 0 from the one-sided three-point stencil (exact on quadratics).
[[nodiscard]] double wall_gradient(const VMState& state);

/// Nodal dw/dpsi (second order, one-sided at the ends).
[[nodiscard]] std::vector<double> psi_gradient(const VMState& state);

/// u_yy = sqrt(w) D2 w / 2 at interior nodes; the wall entry is the trace p'(x), the top entry
/// repeats its neighbour.
[[nodiscard]] std::vector<double> curvature_field(const VMState& state, double wall_pressure_gradient);

/// Infimum of nodal dw/dpsi over psi in [0, k0]: the wall value and centred gradients at nodes
/// inside the range.
[[nodiscard]] double continuation_margin(const VMState& state, double k0 = 1.0);

/// Three-column text file (psi, w, dw/dpsi) with header "# prandtl-vm-snapshot v1 x=<value>".
void save_snapshot(const VMState& state, const std::filesystem::path& path);
[[nodiscard]] VMState load_snapshot(const std::filesystem::path& path);

}  // namespace prandtl::vm
