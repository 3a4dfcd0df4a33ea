#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "smm/grid.hpp"
#include "smm/kernel.hpp"
#include "smm/source.hpp"

namespace smm {

struct SolveLog {
    std::vector<double> diffs;   // ||phi_{n+1} - phi_n|| per Picard step
    std::vector<double> ratios;  // diffs[k+1] / diffs[k]
    int iterations = 0;
    double kappa = 0.0;          // contraction bound of the grid
};

// phi(t, p, i, s) on the grid. The age-0 core is stored; the wedge column of a
// (node, state) pair is filled on first use by marching the fixed-point
// identity along the characteristic (t + r, s + r):
//
//   phi(t, s) = E(s, s+d) phi(t+d, s+d)
//             + int_0^d E(s, s+r) [sum_j h_ij(s+r) psi_j(t+r, p_j) + w(t+r, p, i, s+r)] dr,
//
// E(a, b) = exp(-(L(b) - L(a))), with the panel widths of composite_weights
// so that the march at s = 0 reproduces the core operator.
class ValueField {
public:
    ValueField(SemiMarkovKernel kernel, std::shared_ptr<const Grid> grid, Problem problem, std::vector<double> core,
               SolveLog log = {});
    ~ValueField();
    ValueField(ValueField&&) noexcept;
    ValueField& operator=(ValueField&&) noexcept;

    const SemiMarkovKernel& kernel() const { return kernel_; }
    const Grid& grid() const { return *grid_; }
    std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
    const Problem& problem() const { return problem_; }
    const std::vector<double>& core() const { return core_; }
    const SolveLog& log() const { return log_; }

    double core(int n, std::size_t node, State i) const { return core_[grid_->core_index(n, node, i)]; }
    // psi_j(t_n, p (1 + delta alpha(j))) seen from node.
    double core_after_jump(int n, std::size_t node, State j) const {
        const auto tgt = grid_->jump_target(node, j);
        return core_[grid_->core_index(n, tgt.node, j)] * tgt.scale;
    }

    // Wedge column, computed once and kept. Thread safe.
    std::span<const double> column(std::size_t node, State i) const;
    // Wedge column written to out without touching the cache.
    void compute_column(std::size_t node, State i, std::span<double> out) const;
    // Streams every column through fn(node, i, column) without caching.
    // fn runs concurrently for distinct columns.
    void for_each_column(const std::function<void(std::size_t, State, std::span<const double>)>& fn) const;

    double at_node(int n, std::size_t node, State i, int q) const {
        return column(node, i)[grid_->wedge_index(n, q)];
    }

    // Piecewise linear in (t, s) on triangles whose diagonal follows the
    // characteristic direction; exact lattice lookup in p. Throws DomainError
    // off the lattice or outside the reachable wedge.
    double value_at(double t, double p, State i, double s) const;
    // Age-0 value, linear in t.
    double core_at(double t, double p, State i) const;
    // psi_j(t, p (1 + delta alpha(j))) for p on the lattice, extrapolated like
    // core_after_jump when the target lies beyond the lattice depth.
    double core_after_jump_at(double t, double p, State j) const;

    std::size_t node_of(double p) const;

private:
    struct Cache;

    SemiMarkovKernel kernel_;
    std::shared_ptr<const Grid> grid_;
    Problem problem_;
    std::vector<double> core_;
    SolveLog log_;
    std::vector<double> lam_;          // L(q h)
    std::vector<double> hz_[2];        // h_side(q h)
    std::unique_ptr<Cache> cache_;
};

}  // namespace smm
