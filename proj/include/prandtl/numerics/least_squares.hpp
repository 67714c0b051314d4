#pragma once

#include <span>
#include <vector>

namespace prandtl::numerics {

/// Small row-major dense matrix for least-squares problems with a handful of columns.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

struct LeastSquaresSolution {
    std::vector<double> coefficients;
    double residual_norm = 0.0;   // ||A c - b||_2
    double min_abs_r_diag = 0.0;  // smallest |R_kk| relative to the largest, a rank indicator
};

/// Householder QR solve of min ||A c - b||. Throws NumericalError when A is numerically rank deficient.
[[nodiscard]] LeastSquaresSolution solve_least_squares(DenseMatrix a, std::vector<double> b,
                                                       double rank_tolerance = 1e-12);

}  // namespace prandtl::numerics
