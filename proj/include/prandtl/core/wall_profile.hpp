#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace prandtl::core {

class OuterFlow;

/// Inflow profile u0(y) sampled on an increasing y-grid starting at y = 0, with u0' and u0''
/// tables. Immutable after construction.
class WallProfile {
public:
    /// Samples plus exact derivative tables (analytic constructions).
    static WallProfile from_tables(std::vector<double> y, std::vector<double> u, std::vector<double> du,
                                   std::vector<double> d2u);
    /// Samples only; derivative tables come from second-order finite differences and the wall
    /// Taylor coefficients from a local polynomial fit.
    static WallProfile from_samples(std::vector<double> y, std::vector<double> u);

    [[nodiscard]] std::span<const double> y() const { return y_; }
    [[nodiscard]] std::span<const double> u() const { return u_; }
    [[nodiscard]] std::span<const double> du() const { return du_; }
    [[nodiscard]] std::span<const double> d2u() const { return d2u_; }
    [[nodiscard]] std::size_t size() const { return y_.size(); }
    [[nodiscard]] double y_max() const { return y_.back(); }

    [[nodiscard]] double wall_slope() const { return wall_slope_; }
    [[nodiscard]] double far_field() const { return u_.back(); }
    /// u ~ slope y + a2 y^2/2 + a3 y^3 near the wall: a2 = u0''(0), a3 = u0'''(0)/6.
    [[nodiscard]] double taylor_a2() const { return a2_; }
    [[nodiscard]] double taylor_a3() const { return a3_; }

    /// Cubic Hermite evaluation using the derivative table.
    [[nodiscard]] double value_at(double y) const;
    [[nodiscard]] double slope_at(double y) const;
    /// psi(y) = int_0^y u0, exact for the Hermite interpolant.
    [[nodiscard]] double mass_at(double y) const;
    [[nodiscard]] double total_mass() const { return mass_.back(); }
    [[nodiscard]] std::span<const double> cumulative_mass() const { return mass_; }
    /// Inverse of mass_at. Throws InsufficientMass when psi exceeds the available mass and
    /// NumericalError when the cumulative mass is not increasing.
    [[nodiscard]] double y_of_mass(double psi) const;
    /// Smallest sampled y where u0 >= fraction * far_field().
    [[nodiscard]] double thickness(double fraction) const;

    /// Two-column text file with header "# prandtl-profile v1".
    void save(const std::filesystem::path& path) const;
    static WallProfile load(const std::filesystem::path& path);

private:
    WallProfile(std::vector<double> y, std::vector<double> u, std::vector<double> du, std::vector<double> d2u,
                bool exact_tables);

    std::vector<double> y_, u_, du_, d2u_, mass_;
    double wall_slope_ = 0.0;
    double a2_ = 0.0;
    double a3_ = 0.0;
};

struct ProfileCheck {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<ProfileCheck> checks;
    [[nodiscard]] bool all_passed() const;
    [[nodiscard]] const ProfileCheck* find(std::string_view name) const;
};

struct ValidationTolerances {
    double far_field_relative = 1e-4;
    double monotone_relative = 1e-10;
    double compatibility = 1e-3;
    double third_derivative = 1e-2;
};

/// Class-K diagnostics: wall value, wall slope, monotonicity, far field, u0''(0) = p'(0),
/// u0'''(0) = 0 and wall resolution. Never throws; failures are entries in the report.
[[nodiscard]] ValidationReport validate_profile(const WallProfile& profile, const OuterFlow& flow,
                                                const ValidationTolerances& tol = {});

struct ProfileGrid {
    double y_max = 0.0;  // <= 0 selects a construction-specific default
    std::size_t points = 8001;
};

/// u0 = [slope y + p'(0) y^2 / 2] chi(y/L) + U(0) (1 - chi(y/L)) with the quintic cutoff chi,
/// repaired to be monotone and bounded by U(0) where the blend overshoots.
[[nodiscard]] WallProfile make_profile(double slope, const OuterFlow& flow, double blend_scale,
                                       const ProfileGrid& grid = {});

/// u0' = (slope + p'(0) y) chi(y/l) with l chosen so that u0 -> U(0). Monotone with
/// u0'' <= p'(0) everywhere, so it meets the curvature hypothesis for the upper bound on u_yy.
[[nodiscard]] WallProfile make_tapered_profile(double slope, const OuterFlow& flow, const ProfileGrid& grid = {});

/// Taper length l of make_tapered_profile (solves slope l / 2 + p'(0) l^2 / 7 = U(0)).
[[nodiscard]] double tapered_profile_length(double slope, double wall_pressure_gradient, double far_field);

}  // namespace prandtl::core
