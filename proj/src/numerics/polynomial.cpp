#include "prandtl/numerics/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace prandtl::numerics {

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial{};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    std::vector<double> a(coeffs_.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
    return Polynomial(std::move(a));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    std::vector<double> r(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * other.coeffs_[j];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    std::vector<double> r(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) r[i] += other.coeffs_[i];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::scaled(double factor) const {
    std::vector<double> r = coeffs_;
    for (double& c : r) c *= factor;
    return Polynomial(std::move(r));
}

Polynomial Polynomial::stretched(double length) const {
    std::vector<double> r = coeffs_;
    double scale = 1.0;
    for (double& c : r) {
        c /= scale;
        scale *= length;
    }
    return Polynomial(std::move(r));
}

}  // namespace prandtl::numerics
