#pragma once

#include <vector>

#include "prandtl/vm/state.hpp"

namespace prandtl::lab {

struct ScanRow {
    double x = 0.0;
    double distance = 0.0;  // X* - x
    double bound = 0.0;     // (X* - x)^{3/4}
    double s_min = 0.0;     // min of dw/dpsi on [0, bound]
    double s_max = 0.0;     // max of dw/dpsi on [0, bound]
    double ratio = 0.0;     // s_max / (X* - x)^{1/4}
    double ratio_min = 0.0; // s_min / (X* - x)^{1/4}
};

struct ScanWindow {
    int k = 0;  // X* - x in [2^{-k-1}, 2^{-k})
    std::size_t count = 0;
    double max_ratio = 0.0;
    double max_ratio_min = 0.0;
};

struct CurveScanReport {
    std::vector<ScanRow> rows;
    std::vector<ScanWindow> windows;  // increasing k
    double band = 0.0;   // max/min of window maxima
    double slope = 0.0;  // d log(max_ratio) / d log(X* - x) across windows
};

/// Near-wall scan of dw/dpsi over psi <= (X* - x)^{3/4}, grouped in dyadic windows of X* - x.
/// Windows with fewer than min_count rows are dropped. Throws PreconditionError when a search
/// bound exceeds psi_max.
[[nodiscard]] CurveScanReport scan_quarter_rate(const std::vector<vm::VMState>& snapshots, double xstar,
                                                std::size_t min_count = 1);

}  // namespace prandtl::lab
