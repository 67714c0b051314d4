#include "prandtl/phys/blasius.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "prandtl/error.hpp"
#include "prandtl/numerics/stencils.hpp"

namespace prandtl::phys {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 rhs(const Vec3& s) { return {s[1], s[2], -0.5 * s[0] * s[2]}; }

Vec3 axpy(const Vec3& a, double h, const Vec3& b) { return {a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]}; }

/// Integrates from 0 to eta_max and returns f'(eta_max); fills tables when asked.
double shoot(double fpp0, double eta_max, double step, BlasiusReference* tables) {
    const auto n = static_cast<std::size_t>(std::ceil(eta_max / step));
    const double h = eta_max / static_cast<double>(n);
    Vec3 s{0.0, 0.0, fpp0};
    if (tables) {
        tables->eta.assign(1, 0.0);
        tables->f.assign(1, 0.0);
        tables->fp.assign(1, 0.0);
        tables->fpp.assign(1, fpp0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 k1 = rhs(s);
        const Vec3 k2 = rhs(axpy(s, 0.5 * h, k1));
        const Vec3 k3 = rhs(axpy(s, 0.5 * h, k2));
        const Vec3 k4 = rhs(axpy(s, h, k3));
        for (int c = 0; c < 3; ++c) s[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        if (!std::isfinite(s[1])) return s[1];
        if (tables) {
            tables->eta.push_back(h * static_cast<double>(i + 1));
            tables->f.push_back(s[0]);
            tables->fp.push_back(s[1]);
            tables->fpp.push_back(s[2]);
        }
    }
    return s[1];
}

}  // namespace

double BlasiusReference::velocity(double e) const {
    if (e <= 0.0) return 0.0;
    if (e >= eta.back()) return 1.0;
    const std::size_t k = numerics::bracket(eta, e);
    const double h = eta[k + 1] - eta[k];
    return numerics::hermite_value(fp[k], fp[k + 1], fpp[k], fpp[k + 1], h, (e - eta[k]) / h);
}

double BlasiusReference::shear(double e) const {
    if (e <= 0.0) return fpp0;
    if (e >= eta.back()) return 0.0;
    const std::size_t k = numerics::bracket(eta, e);
    const double h = eta[k + 1] - eta[k];
    return numerics::hermite_slope(fp[k], fp[k + 1], fpp[k], fpp[k + 1], h, (e - eta[k]) / h);
}

double BlasiusReference::thickness99() const {
    for (std::size_t i = 0; i < fp.size(); ++i)
        if (fp[i] >= 0.99) return eta[i];
    return eta.back();
}

BlasiusReference blasius_reference(double eta_max, double tol, double step) {
    if (!(eta_max >= 8.0)) throw PreconditionError("blasius_reference: eta_max must be at least 8");
    double lo = 0.1, hi = 1.0;
    const double f_lo = shoot(lo, eta_max, step, nullptr) - 1.0;
    const double f_hi = shoot(hi, eta_max, step, nullptr) - 1.0;
    if (!(f_lo < 0.0 && f_hi > 0.0)) {
        std::ostringstream msg;
        msg << "blasius_reference: shooting bracket [" << lo << ", " << hi << "] does not straddle f'(inf) = 1";
        throw NumericalError(msg.str());
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (shoot(mid, eta_max, step, nullptr) < 1.0) lo = mid;
        else hi = mid;
    }
    BlasiusReference ref;
    ref.fpp0 = 0.5 * (lo + hi);
    ref.eta_max = eta_max;
    const double far = shoot(ref.fpp0, eta_max, step, &ref);
    if (std::abs(far - 1.0) > 1e-8) throw NumericalError("blasius_reference: far-field check failed");
    return ref;
}

core::WallProfile blasius_profile(const BlasiusReference& ref, double x_a, double y_max, std::size_t points) {
    if (!(x_a > 0.0)) throw PreconditionError("blasius_profile: x_a must be positive");
    if (points < 16 || !(y_max > 0.0)) throw PreconditionError("blasius_profile: bad grid");
    const double r = std::sqrt(x_a);
    std::vector<double> y(points), u(points), du(points), d2u(points);
    for (std::size_t i = 0; i < points; ++i) {
        y[i] = y_max * static_cast<double>(i) / static_cast<double>(points - 1);
        const double e = y[i] / r;
        if (e >= ref.eta.back()) {
            u[i] = 1.0;
            du[i] = 0.0;
            d2u[i] = 0.0;
            continue;
        }
        const std::size_t k = numerics::bracket(ref.eta, e);
        const double h = ref.eta[k + 1] - ref.eta[k];
        const double t = (e - ref.eta[k]) / h;
        const double f = numerics::hermite_value(ref.f[k], ref.f[k + 1], ref.fp[k], ref.fp[k + 1], h, t);
        const double fpp = ref.shear(e);
        u[i] = ref.velocity(e);
        du[i] = fpp / r;
        d2u[i] = -0.5 * f * fpp / x_a;
    }
    return core::WallProfile::from_tables(std::move(y), std::move(u), std::move(du), std::move(d2u));
}

}  // namespace prandtl::phys
