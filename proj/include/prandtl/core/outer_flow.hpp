#pragma once

#include <optional>
#include <string>

#include "prandtl/numerics/polynomial.hpp"

namespace prandtl::core {

/// Analytic pressure input: either a constant gradient p' = g (p = g x) or a polynomial p(x).
struct PressureSpec {
    enum class Kind { constant_gradient, polynomial };

    Kind kind = Kind::constant_gradient;
    double gradient = 0.0;
    numerics::Polynomial pressure;

    static PressureSpec constant(double gradient);
    static PressureSpec polynomial(numerics::Polynomial p);

    [[nodiscard]] numerics::Polynomial as_polynomial() const;
};

/// Outer (inviscid) flow tied to the pressure by Bernoulli: U(x)^2 = E - 2 p(x).
///
/// In adverse mode E = 2 p(x0), so U vanishes first at x0. Otherwise E fixes U(0).
class OuterFlow {
public:
    /// Adverse-pressure flow with first zero of U at x0. Throws if x0 <= 0 or p' <= 0 on [0, x0].
    static OuterFlow adverse(const PressureSpec& pressure, double x0);
    /// Flow with prescribed U(0) > 0 (neutral or favourable pressure, or the adverse case
    /// without a named x0). No x0 is recorded even if U would vanish downstream.
    static OuterFlow with_inflow_speed(const PressureSpec& pressure, double u0);

    [[nodiscard]] double pressure(double x) const { return p_(x); }
    [[nodiscard]] double pressure_gradient(double x) const { return dp_(x); }
    [[nodiscard]] double pressure_second_derivative(double x) const { return d2p_(x); }

    /// U(x)^2 = E - 2 p(x). Throws PreconditionError past x0.
    [[nodiscard]] double speed_squared(double x) const;
    [[nodiscard]] double speed(double x) const;

    [[nodiscard]] std::optional<double> x0() const { return x0_; }
    [[nodiscard]] bool is_adverse() const { return x0_.has_value(); }
    [[nodiscard]] const PressureSpec& pressure_spec() const { return spec_; }
    /// Short stable text used to tag records ("dp=1 x0=16", "p=0+1x+0.1x^2 x0=16", ...).
    [[nodiscard]] std::string describe() const;

private:
    OuterFlow(PressureSpec spec, double bernoulli, std::optional<double> x0);

    PressureSpec spec_;
    numerics::Polynomial p_;
    numerics::Polynomial dp_;
    numerics::Polynomial d2p_;
    double bernoulli_ = 0.0;
    std::optional<double> x0_;
};

}  // namespace prandtl::core
