#pragma once

#include <memory>
#include <span>
#include <vector>

#include "smm/core_operator.hpp"
#include "smm/ensemble.hpp"
#include "smm/value_field.hpp"

namespace smm {

// max over grid ages s of (F(T+s) - F(s)) / (1 - F(s)), the factor by which
// one application of the operator shrinks differences.
double contraction_bound(const SemiMarkovKernel& kernel, const Grid& grid);

// One application of the operator at age 0.
std::vector<double> apply_T_age0(const SemiMarkovKernel& kernel, std::shared_ptr<const Grid> grid,
                                 const Problem& problem, std::span<const double> core_in);

struct CoreSolution {
    std::vector<double> core;
    SolveLog log;
};

// Picard iteration from psi = g until the weighted distance of consecutive
// iterates drops below grid.spec().tol_fp. Throws NonConvergence carrying the
// ratio history after max_iter steps.
CoreSolution solve_fixed_point(const SemiMarkovKernel& kernel, std::shared_ptr<const Grid> grid,
                               const Problem& problem, Execution mode = Execution::Parallel);

ValueField extend_to_age(const SemiMarkovKernel& kernel, std::shared_ptr<const Grid> grid, Problem problem,
                         CoreSolution solution);

// Expected terminal price: g(p) = p, w = 0.
ValueField solve_pi(const SemiMarkovKernel& kernel, std::shared_ptr<const Grid> grid);

struct ResidualStats {
    double max = 0.0;
    double mean = 0.0;
    std::size_t count = 0;
};

// Residual of  d/dt phi + d/ds phi + sum_j h_ij(s) (phi(t, p_j, j, 0) - phi) + w
// at every interior wedge node of a column (NaN elsewhere), with the
// derivative taken by central differences along (t + r, s + r). Interior
// means 0 < n < n_t, 0 < q < q0 + n and a lattice node whose jump targets
// are on the lattice.
std::vector<double> column_residual(const ValueField& field, std::size_t node, State i,
                                    std::span<const double> column);

// Statistics of |residual| / (1 + p) over all interior nodes.
ResidualStats pde_residual(const ValueField& field);

}  // namespace smm
