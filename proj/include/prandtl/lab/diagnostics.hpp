#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "prandtl/core/outer_flow.hpp"
#include "prandtl/core/wall_profile.hpp"
#include "prandtl/vm/run_record.hpp"

namespace prandtl::lab {

struct CurvatureBounds {
    double min_uyy = 0.0;
    double max_uyy = 0.0;
    double max_excess = 0.0;  // max of u_yy - p'(x) over all stations
    std::vector<double> x, min_per_x, max_per_x;
    /// Inflow curvature hypothesis: u0'' <= p'(0) on the profile grid and p'' >= 0 on [0, x0].
    bool upper_hypothesis = false;
    double inflow_max_uyy = 0.0;
};

[[nodiscard]] CurvatureBounds check_second_derivative_bounds(const vm::RunRecord& record,
                                                             const core::WallProfile& profile,
                                                             const core::OuterFlow& flow, double tol = 1e-9);

/// max over snapshots of |u_yy(psi_j) - p'(x)| at the first interior node with psi_j >= psi_probe.
[[nodiscard]] double wall_trace_deviation(const std::vector<vm::VMState>& snapshots, const core::OuterFlow& flow,
                                          double psi_probe);

struct MassInequalityRow {
    double x_mid = 0.0;
    double lhs = 0.0;       // d/dx int w phi
    double rhs = 0.0;       // -2 p' int phi + (2/3) int w^{3/2} phi''
    double residual = 0.0;  // lhs - rhs, <= 0 when the inequality holds
};

struct MassInequalityReport {
    std::vector<MassInequalityRow> rows;
    double max_residual = -std::numeric_limits<double>::infinity();
    std::size_t skipped_pairs = 0;  // pairs too far apart (dx >= delta^2 / 10)
};

/// Windowed-mass inequality on consecutive snapshot pairs with phi(psi) = chi((psi - d/2)/(d/2)).
[[nodiscard]] MassInequalityReport weighted_mass_inequality(const std::vector<vm::VMState>& snapshots,
                                                            const core::OuterFlow& flow, double delta);

struct CollapseReport {
    std::vector<double> lambdas;        // effective lambda = X* - x of the snapshot used
    std::vector<double> pair_errors;    // max-norm difference between successive rescaled profiles
    double eta_max = 0.0;
};

/// u_lambda(eta) = lambda^{-1/2} u(X* - lambda, lambda^{1/4} eta) from the snapshot nearest to each X* - lambda.
[[nodiscard]] CollapseReport selfsimilar_collapse(const std::vector<vm::VMState>& snapshots, double xstar,
                                                  const std::vector<double>& lambdas, double eta_cap = 10.0);

struct SolverComparison {
    double max_rel_tau_diff = 0.0;  // over x <= x_limit
    double x_limit = 0.0;
    std::optional<double> xstar_vm, xstar_phys;
    std::optional<double> xstar_rel_diff;
    std::size_t compared = 0;
};

/// Throws PreconditionError when the records carry different scenario hashes.
[[nodiscard]] SolverComparison compare_solvers(const vm::RunRecord& vm_record, const vm::RunRecord& phys_record,
                                               double tail_fraction = 0.5, double x_fraction = 0.9);

}  // namespace prandtl::lab
