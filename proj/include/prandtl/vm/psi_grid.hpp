#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace prandtl::vm {

/// Graded stream-function grid psi_j = psi_max (j/N)^gamma, j = 0..N (N + 1 nodes).
class PsiGrid {
public:
    PsiGrid(double psi_max, std::size_t intervals, double grading = 2.0);
    /// Arbitrary increasing nodes starting at 0 (snapshot files). grading() reports 0.
    static PsiGrid from_nodes(std::vector<double> nodes);

    [[nodiscard]] double psi_max() const { return psi_max_; }
    [[nodiscard]] std::size_t intervals() const { return nodes_.size() - 1; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] double grading() const { return grading_; }
    [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
    [[nodiscard]] double operator[](std::size_t j) const { return nodes_[j]; }
    [[nodiscard]] double spacing(std::size_t j) const { return nodes_[j + 1] - nodes_[j]; }

private:
    PsiGrid() = default;
    double psi_max_ = 0.0;
    double grading_ = 0.0;
    std::vector<double> nodes_;
};

}  // namespace prandtl::vm
