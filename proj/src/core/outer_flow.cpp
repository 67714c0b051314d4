#include "prandtl/core/outer_flow.hpp"

#include <cmath>
#include <sstream>

#include "prandtl/error.hpp"

namespace prandtl::core {

PressureSpec PressureSpec::constant(double gradient) {
    PressureSpec s;
    s.kind = Kind::constant_gradient;
    s.gradient = gradient;
    s.pressure = numerics::Polynomial({0.0, gradient});
    return s;
}

PressureSpec PressureSpec::polynomial(numerics::Polynomial p) {
    PressureSpec s;
    s.kind = Kind::polynomial;
    s.pressure = std::move(p);
    s.gradient = s.pressure.derivative()(0.0);
    return s;
}

numerics::Polynomial PressureSpec::as_polynomial() const {
    return kind == Kind::constant_gradient ? numerics::Polynomial({0.0, gradient}) : pressure;
}

OuterFlow::OuterFlow(PressureSpec spec, double bernoulli, std::optional<double> x0)
    : spec_(std::move(spec)), bernoulli_(bernoulli), x0_(x0) {
    p_ = spec_.as_polynomial();
    dp_ = p_.derivative();
    d2p_ = dp_.derivative();
}

OuterFlow OuterFlow::adverse(const PressureSpec& pressure, double x0) {
    if (!(x0 > 0.0) || !std::isfinite(x0)) throw PreconditionError("make_outer_flow: x0 must be positive");
    const auto p = pressure.as_polynomial();
    const auto dp = p.derivative();
    constexpr int samples = 4000;
    for (int i = 0; i <= samples; ++i) {
        const double x = x0 * i / samples;
        if (!(dp(x) > 0.0)) {
            std::ostringstream msg;
            msg << "make_outer_flow: adverse scenario requires p' > 0 on [0, x0], but p'(" << x << ") = " << dp(x);
            throw PreconditionError(msg.str());
        }
    }
    return OuterFlow(pressure, 2.0 * p(x0), x0);
}

OuterFlow OuterFlow::with_inflow_speed(const PressureSpec& pressure, double u0) {
    if (!(u0 > 0.0)) throw PreconditionError("make_outer_flow: inflow speed U(0) must be positive");
    const auto p = pressure.as_polynomial();
    return OuterFlow(pressure, u0 * u0 + 2.0 * p(0.0), std::nullopt);
}

double OuterFlow::speed_squared(double x) const {
    if (x0_ && x > *x0_ * (1.0 + 1e-14)) throw PreconditionError("OuterFlow: x beyond the stagnation point x0");
    if (x0_) {
        // Written as 2(p(x0) - p(x)) so that U(x0) = 0 holds to rounding.
        return std::max(0.0, bernoulli_ - 2.0 * p_(x));
    }
    const double u2 = bernoulli_ - 2.0 * p_(x);
    if (!(u2 > 0.0)) throw PreconditionError("OuterFlow: outer speed vanishes; flow has no named x0");
    return u2;
}

double OuterFlow::speed(double x) const { return std::sqrt(speed_squared(x)); }

std::string OuterFlow::describe() const {
    std::ostringstream out;
    out.precision(12);
    if (spec_.kind == PressureSpec::Kind::constant_gradient) {
        out << "dp=" << spec_.gradient;
    } else {
        out << "p=";
        const auto c = spec_.pressure.coefficients();
        for (std::size_t k = 0; k < c.size(); ++k) out << (k ? "," : "") << c[k];
    }
    if (x0_) out << " x0=" << *x0_;
    else out << " U0=" << std::sqrt(bernoulli_ - 2.0 * p_(0.0));
    return out.str();
}

}  // namespace prandtl::core
