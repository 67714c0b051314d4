#include "prandtl/lab/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "prandtl/error.hpp"
#include "prandtl/numerics/least_squares.hpp"

namespace prandtl::lab {

namespace nm = prandtl::numerics;

namespace {

struct Params {
    double log_a = 0.0;
    double alpha = 0.5;
    double q = 0.0;  // X* = x_last + exp(q)
};

double cost(std::span<const double> x, std::span<const double> lt, double x_last, const Params& p,
            std::vector<double>* r = nullptr) {
    const double xs = x_last + std::exp(p.q);
    double c = 0.0;
    if (r) r->resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = lt[i] - p.log_a - p.alpha * std::log(xs - x[i]);
        if (r) (*r)[i] = e;
        c += e * e;
    }
    return c;
}

/// LM in (log A, alpha, q) or (log A, q) when alpha is fixed.
RateFit levenberg_marquardt(std::span<const double> x, std::span<const double> lt, Params p, bool fit_alpha) {
    const double x_last = x.back();
    const std::size_t m = x.size();
    const std::size_t k = fit_alpha ? 3 : 2;
    std::vector<double> r;
    double c = cost(x, lt, x_last, p, &r);
    double lambda = 1e-3;
    int it = 0;
    bool done = false;
    for (; it < 500 && !done; ++it) {
        const double xs = x_last + std::exp(p.q);
        nm::DenseMatrix jac(m + k, k);
        std::vector<double> rhs(m + k, 0.0);
        std::vector<double> colsq(k, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double d = xs - x[i];
            std::size_t col = 0;
            jac(i, col++) = 1.0;
            if (fit_alpha) jac(i, col++) = std::log(d);
            jac(i, col) = p.alpha * std::exp(p.q) / d;
            rhs[i] = r[i];
            for (std::size_t j = 0; j < k; ++j) colsq[j] += jac(i, j) * jac(i, j);
        }
        bool improved = false;
        for (int tries = 0; tries < 40 && !improved; ++tries) {
            nm::DenseMatrix aug = jac;
            std::vector<double> b = rhs;
            for (std::size_t j = 0; j < k; ++j) aug(m + j, j) = std::sqrt(lambda * std::max(colsq[j], 1e-300));
            std::vector<double> step;
            try {
                step = nm::solve_least_squares(aug, b, 0.0).coefficients;
            } catch (const NumericalError&) {
                lambda *= 10.0;
                continue;
            }
            Params trial = p;
            std::size_t col = 0;
            trial.log_a += step[col++];
            if (fit_alpha) trial.alpha += step[col++];
            trial.q += std::clamp(step[col], -5.0, 5.0);
            std::vector<double> tr;
            const double tc = cost(x, lt, x_last, trial, &tr);
            if (std::isfinite(tc) && tc <= c) {
                const double rel = (c - tc) / std::max(c, 1e-300);
                p = trial;
                r = std::move(tr);
                const double old = c;
                c = tc;
                lambda = std::max(lambda / 10.0, 1e-12);
                improved = true;
                done = rel < 1e-14 || old < 1e-30;
            } else {
                lambda *= 10.0;
            }
        }
        if (!improved) break;
    }
    RateFit fit;
    fit.A = std::exp(p.log_a);
    fit.alpha = p.alpha;
    fit.xstar = x_last + std::exp(p.q);
    fit.x_lo = x.front();
    fit.x_hi = x.back();
    fit.residual = std::sqrt(c / static_cast<double>(m));
    fit.stations = m;
    fit.iterations = it;
    fit.method = fit_alpha ? FitMethod::free_alpha : FitMethod::fixed_alpha;
    return fit;
}

/// Root of the least-squares line through (x, tau^power).
double extrapolate_root(std::span<const double> x, std::span<const double> tau, double power) {
    nm::DenseMatrix a(x.size(), 2);
    std::vector<double> b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = x[i] - x.back();
        b[i] = std::pow(tau[i], power);
    }
    const auto c = nm::solve_least_squares(a, b).coefficients;
    if (!(c[1] < 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return x.back() - c[0] / c[1];
}

/// log A given X* and alpha by averaging.
double log_amplitude(std::span<const double> x, std::span<const double> lt, double xs, double alpha) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += lt[i] - alpha * std::log(xs - x[i]);
    return s / static_cast<double>(x.size());
}

RateFit fit_from_starts(std::span<const double> x, std::span<const double> tau, double alpha0, bool fit_alpha) {
    if (x.size() != tau.size() || x.size() < 4) throw PreconditionError("rate fit: need matching series of >= 4 points");
    std::vector<double> lt(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(tau[i] > 0.0)) throw PreconditionError("rate fit: wall shear must be positive");
        if (i > 0 && !(x[i] > x[i - 1])) throw PreconditionError("rate fit: x must be increasing");
        lt[i] = std::log(tau[i]);
    }
    const double span = x.back() - x.front();
    std::vector<double> starts;
    for (double power : {2.0, 4.0}) {
        const double root = extrapolate_root(x, tau, power);
        if (std::isfinite(root)) starts.push_back(root);
    }
    for (double& s : starts) s = std::max(s, x.back() + 1e-6 * span);
    if (starts.empty()) starts.push_back(x.back() + 0.1 * span);

    RateFit best;
    best.residual = std::numeric_limits<double>::infinity();
    for (double xs : starts) {
        Params p;
        p.alpha = alpha0;
        p.q = std::log(xs - x.back());
        p.log_a = log_amplitude(x, lt, xs, alpha0);
        auto fit = levenberg_marquardt(x, lt, p, fit_alpha);
        if (std::isfinite(fit.residual) && fit.residual < best.residual) best = fit;
    }
    if (!std::isfinite(best.residual)) throw NumericalError("rate fit: no start converged");
    return best;
}

std::vector<vm::Station> tail(const vm::RunRecord& record, double tail_fraction) {
    if (record.termination != vm::Termination::separated)
        throw PreconditionError("estimate_xstar: record did not terminate with status separated");
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) throw PreconditionError("estimate_xstar: tail_fraction in (0,1)");
    const auto n = record.stations.size();
    const auto m = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n)));
    if (m < 20) throw PreconditionError("estimate_xstar: fewer than 20 stations in the tail window");
    return {record.stations.end() - static_cast<std::ptrdiff_t>(m), record.stations.end()};
}

}  // namespace

RateFit estimate_xstar(std::span<const double> x, std::span<const double> tau) {
    return fit_from_starts(x, tau, 0.5, true);
}

RateFit estimate_xstar_fixed_alpha(std::span<const double> x, std::span<const double> tau, double alpha) {
    if (!(alpha > 0.0)) throw PreconditionError("estimate_xstar: alpha must be positive");
    return fit_from_starts(x, tau, alpha, false);
}

RateFit estimate_xstar(const vm::RunRecord& record, double tail_fraction) {
    const auto t = tail(record, tail_fraction);
    std::vector<double> x, tau;
    for (const auto& s : t) {
        x.push_back(s.x);
        tau.push_back(s.tau_wall);
    }
    return estimate_xstar(x, tau);
}

RateFit fit_rate_exponent(std::span<const double> x, std::span<const double> tau, double xstar, double x_lo,
                          double x_hi) {
    if (!(x_hi < xstar) || !(x_lo < x_hi)) throw PreconditionError("fit_rate_exponent: need x_lo < x_hi < xstar");
    std::vector<double> lx, lt;
    RateFit fit;
    fit.method = FitMethod::fixed_xstar;
    fit.xstar = xstar;
    fit.x_lo = x_lo;
    fit.x_hi = x_hi;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < x_lo || x[i] > x_hi || !(tau[i] > 0.0)) continue;
        const double d = xstar - x[i];
        lx.push_back(std::log(d));
        lt.push_back(std::log(tau[i]));
        fit.C_estimate = std::max(fit.C_estimate, tau[i] / std::pow(d, 0.25));
    }
    if (lx.empty()) throw PreconditionError("fit_rate_exponent: empty window");
    if (lx.size() < 10) throw PreconditionError("fit_rate_exponent: fewer than 10 stations in the window");
    nm::DenseMatrix a(lx.size(), 2);
    for (std::size_t i = 0; i < lx.size(); ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = lx[i];
    }
    const auto sol = nm::solve_least_squares(a, lt);
    fit.A = std::exp(sol.coefficients[0]);
    fit.alpha = sol.coefficients[1];
    fit.residual = sol.residual_norm / std::sqrt(static_cast<double>(lx.size()));
    fit.stations = lx.size();
    return fit;
}

RateFit fit_rate_exponent(const vm::RunRecord& record, double xstar, double x_lo, double x_hi) {
    const auto x = record.xs();
    const auto t = record.taus();
    return fit_rate_exponent(x, t, xstar, x_lo, x_hi);
}

GoldsteinFit goldstein_fit(std::span<const double> x, std::span<const double> tau, double xstar, int n_terms,
                           double s_lo, double s_hi) {
    if (n_terms != 1 && n_terms != 2) throw PreconditionError("goldstein_fit: n_terms must be 1 or 2");
    std::vector<double> s, t;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = xstar - x[i];
        if (d >= s_lo && d <= s_hi && d > 0.0) {
            s.push_back(d);
            t.push_back(tau[i]);
        }
    }
    if (s.size() < 20) throw PreconditionError("goldstein_fit: fewer than 20 stations in the window");
    nm::DenseMatrix a(s.size(), static_cast<std::size_t>(n_terms));
    for (std::size_t i = 0; i < s.size(); ++i) {
        a(i, 0) = std::sqrt(s[i]);
        if (n_terms == 2) a(i, 1) = std::pow(s[i], 0.75);
    }
    const auto sol = nm::solve_least_squares(a, t, 1e-10);
    GoldsteinFit g;
    g.coefficients = sol.coefficients;
    g.residual = sol.residual_norm / std::sqrt(static_cast<double>(s.size()));
    g.stations = s.size();
    return g;
}

GoldsteinFit goldstein_fit(const vm::RunRecord& record, double xstar, int n_terms, double s_lo, double s_hi) {
    const auto x = record.xs();
    const auto t = record.taus();
    return goldstein_fit(x, t, xstar, n_terms, s_lo, s_hi);
}

}  // namespace prandtl::lab
