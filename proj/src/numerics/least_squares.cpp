#include "prandtl/numerics/least_squares.hpp"

#include <algorithm>
#include <cmath>

#include "prandtl/error.hpp"

namespace prandtl::numerics {

LeastSquaresSolution solve_least_squares(DenseMatrix a, std::vector<double> b, double rank_tolerance) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m < n || b.size() != m) throw PreconditionError("solve_least_squares: need rows >= cols and matching rhs");

    std::vector<double> r_diag(n);
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += a(i, k) * a(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            r_diag[k] = 0.0;
            continue;
        }
        const double alpha = a(k, k) > 0 ? -norm : norm;
        std::vector<double> v(m - k);
        for (std::size_t i = k; i < m; ++i) v[i - k] = a(i, k);
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (double vi : v) vnorm2 += vi * vi;
        if (vnorm2 > 0.0) {
            for (std::size_t j = k; j < n; ++j) {
                double dot = 0.0;
                for (std::size_t i = k; i < m; ++i) dot += v[i - k] * a(i, j);
                const double f = 2.0 * dot / vnorm2;
                for (std::size_t i = k; i < m; ++i) a(i, j) -= f * v[i - k];
            }
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += v[i - k] * b[i];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < m; ++i) b[i] -= f * v[i - k];
        }
        r_diag[k] = a(k, k);
    }

    double max_diag = 0.0;
    for (double d : r_diag) max_diag = std::max(max_diag, std::abs(d));
    double min_diag = max_diag;
    for (double d : r_diag) min_diag = std::min(min_diag, std::abs(d));
    if (max_diag == 0.0 || min_diag <= rank_tolerance * max_diag)
        throw NumericalError("solve_least_squares: design matrix is rank deficient");

    LeastSquaresSolution out;
    out.coefficients.assign(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * out.coefficients[j];
        out.coefficients[k] = s / a(k, k);
    }
    double res = 0.0;
    for (std::size_t i = n; i < m; ++i) res += b[i] * b[i];
    out.residual_norm = std::sqrt(res);
    out.min_abs_r_diag = min_diag / max_diag;
    return out;
}

}  // namespace prandtl::numerics
