#include "prandtl/lab/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "prandtl/error.hpp"
#include "prandtl/numerics/least_squares.hpp"
#include "prandtl/numerics/stencils.hpp"

namespace prandtl::lab {

CurveScanReport scan_quarter_rate(const std::vector<vm::VMState>& snapshots, double xstar, std::size_t min_count) {
    CurveScanReport rep;
    std::map<int, ScanWindow> windows;
    for (const auto& s : snapshots) {
        const double d = xstar - s.x;
        if (!(d > 0.0)) continue;
        ScanRow row;
        row.x = s.x;
        row.distance = d;
        row.bound = std::pow(d, 0.75);
        if (row.bound > s.grid->psi_max()) throw PreconditionError("scan_quarter_rate: search bound exceeds psi_max");
        const auto psi = s.psi();
        const auto dw = vm::psi_gradient(s);
        row.s_min = row.s_max = dw[0];
        for (std::size_t j = 1; j < psi.size() && psi[j] <= row.bound; ++j) {
            row.s_min = std::min(row.s_min, dw[j]);
            row.s_max = std::max(row.s_max, dw[j]);
        }
        const double end = numerics::interpolate_linear(psi, dw, row.bound);
        row.s_min = std::min(row.s_min, end);
        row.s_max = std::max(row.s_max, end);
        const double q = std::pow(d, 0.25);
        row.ratio = row.s_max / q;
        row.ratio_min = row.s_min / q;
        rep.rows.push_back(row);

        const int k = static_cast<int>(std::floor(-std::log2(d)));
        auto& w = windows[k];
        w.k = k;
        ++w.count;
        w.max_ratio = std::max(w.max_ratio, row.ratio);
        w.max_ratio_min = std::max(w.max_ratio_min, row.ratio_min);
    }
    for (const auto& [k, w] : windows)
        if (w.count >= min_count) rep.windows.push_back(w);
    if (!rep.windows.empty()) {
        double lo = rep.windows.front().max_ratio, hi = lo;
        for (const auto& w : rep.windows) {
            lo = std::min(lo, w.max_ratio);
            hi = std::max(hi, w.max_ratio);
        }
        rep.band = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    }
    if (rep.windows.size() >= 2) {
        numerics::DenseMatrix a(rep.windows.size(), 2);
        std::vector<double> b(rep.windows.size());
        for (std::size_t i = 0; i < rep.windows.size(); ++i) {
            // Window centre in X* - x (geometric mean of the dyadic endpoints).
            a(i, 0) = 1.0;
            a(i, 1) = -(rep.windows[i].k + 0.5) * std::log(2.0);
            b[i] = std::log(rep.windows[i].max_ratio);
        }
        rep.slope = numerics::solve_least_squares(a, b).coefficients[1];
    }
    return rep;
}

}  // namespace prandtl::lab
