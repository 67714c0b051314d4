#include "prandtl/vm/psi_grid.hpp"

#include <cmath>

#include "prandtl/error.hpp"

namespace prandtl::vm {

PsiGrid::PsiGrid(double psi_max, std::size_t intervals, double grading) : psi_max_(psi_max), grading_(grading) {
    if (!(psi_max > 0.0)) throw PreconditionError("PsiGrid: psi_max must be positive");
    if (intervals < 2) throw PreconditionError("PsiGrid: need at least 3 nodes");
    if (!(grading >= 1.0)) throw PreconditionError("PsiGrid: grading exponent must be >= 1");
    nodes_.resize(intervals + 1);
    for (std::size_t j = 0; j <= intervals; ++j)
        nodes_[j] = psi_max * std::pow(static_cast<double>(j) / static_cast<double>(intervals), grading);
    nodes_.back() = psi_max;
}

PsiGrid PsiGrid::from_nodes(std::vector<double> nodes) {
    if (nodes.size() < 3 || nodes.front() != 0.0) throw PreconditionError("PsiGrid: nodes must start at 0, >= 3 nodes");
    for (std::size_t j = 1; j < nodes.size(); ++j)
        if (!(nodes[j] > nodes[j - 1])) throw PreconditionError("PsiGrid: nodes must be strictly increasing");
    PsiGrid g;
    g.psi_max_ = nodes.back();
    g.nodes_ = std::move(nodes);
    return g;
}

}  // namespace prandtl::vm
