#pragma once

#include <memory>
#include <span>
#include <vector>

#include "smm/grid.hpp"
#include "smm/kernel.hpp"
#include "smm/source.hpp"

namespace smm {

// The fixed-point map restricted to age 0. At s = 0 the unknown enters only
// through its age-0 values at the jump targets, so the map closes on the core
// psi_i(t_n, p) = phi(t_n, p, i, 0):
//
//   psi_i(t, p) = g(p) (1 - F(T-t))
//               + sum_j int_t^T h_ij(v-t) (1 - F(v-t)) psi_j(v, p (1 + delta alpha(j))) dv
//               + int_t^T (1 - F(v-t)) w(v, p, i, v-t) dv.
//
// The integrals use composite_weights on the time grid. The payoff and source
// terms do not depend on psi and are tabulated once at construction.
class CoreOperator {
public:
    CoreOperator(const SemiMarkovKernel& kernel, std::shared_ptr<const Grid> grid, const Problem& problem);

    const Grid& grid() const { return *grid_; }
    std::size_t size() const { return grid_->core_size(); }

    // g(p) on every core entry.
    std::vector<double> initial() const;

    // out = T(in); parallel over (node, state) columns.
    void apply(std::span<const double> in, std::span<double> out) const;

    // Payoff plus source part, i.e. T(0).
    const std::vector<double>& affine_part() const { return affine_; }

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<double> payoff_;  // g at each lattice node
    std::vector<double> affine_;  // core layout
    // weights_[side][m(m+1)/2 + r] = h c_r(m) h_side(r h) exp(-L(r h))
    std::vector<double> weights_[2];
    std::array<std::array<Side, 4>, 4> side_of_;  // hazard side of i -> j
};

// Serial transcription evaluating kernel functions directly at every
// quadrature node; kept as the reference for the tabulated operator.
void apply_reference(const SemiMarkovKernel& kernel, const Grid& grid, const Problem& problem,
                     std::span<const double> in, std::span<double> out);

// Weighted sup norm max |a - b| / (1 + p) over the core.
double core_distance(const Grid& grid, std::span<const double> a, std::span<const double> b);

}  // namespace smm
