#pragma once

#include <span>
#include <vector>

namespace prandtl::numerics {

/// Dense polynomial c[0] + c[1] t + c[2] t^2 + ...
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coefficients);

    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] Polynomial derivative() const;
    /// Antiderivative vanishing at t = 0.
    [[nodiscard]] Polynomial antiderivative() const;
    [[nodiscard]] Polynomial operator*(const Polynomial& other) const;
    [[nodiscard]] Polynomial operator+(const Polynomial& other) const;
    [[nodiscard]] Polynomial scaled(double factor) const;
    /// p(t / length), i.e. coefficient k divided by length^k.
    [[nodiscard]] Polynomial stretched(double length) const;

    [[nodiscard]] std::span<const double> coefficients() const { return coeffs_; }
    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

private:
    std::vector<double> coeffs_{0.0};
};

}  // namespace prandtl::numerics
