#pragma once

#include <cstddef>
#include <vector>

#include "smm/kernel.hpp"
#include "smm/lattice.hpp"

namespace smm {

struct GridSpec {
    int n_t = 200;
    int n_max = -1;          // lattice depth; < 0 picks it from tail_tol
    double tol_fp = 1e-8;    // Picard stopping tolerance in the weighted norm
    double tail_tol = 1e-10; // bound on P(more than n_max price moves)
    int max_iter = 200;
};

// Smallest N with P(Poisson(2 c1 T) > N) < tail_tol.
int lattice_depth(double c1, double T, double tail_tol);

// Composite rule on m unit intervals: Simpson for even m, the 3/8 rule on the
// first three intervals followed by Simpson for odd m >= 3, trapezoid for m = 1.
std::vector<double> composite_weights(int m);

// Width of the first panel of composite_weights(m).
inline int panel_width(int m) { return m == 0 ? 0 : m == 1 ? 1 : (m % 2 == 0 ? 2 : 3); }

// Weights of a single panel of the given width.
const std::vector<double>& panel_weights(int width);

// Discretisation of [0,T] x lattice x states x ages. Time and age share the
// step h = T / n_t. Row n (time t_n = n h) carries the ages q h with
// q <= q0 + n, q0 = ceil(S0 / h): exactly the ages a path started at age S0
// can have at t_n. A (node, state) column stores one such wedge row by row.
class Grid {
public:
    Grid(double p0, double delta, double T, double s0, const GridSpec& spec, double c1);

    const GridSpec& spec() const { return spec_; }
    const PriceLattice& lattice() const { return lattice_; }
    int n_t() const { return spec_.n_t; }
    double T() const { return T_; }
    double h() const { return h_; }
    double s0() const { return s0_; }
    int q0() const { return q0_; }
    int q_max() const { return q0_ + spec_.n_t; }
    double s_max() const { return q_max() * h_; }
    double t(int n) const { return n * h_; }

    std::size_t nodes() const { return lattice_.size(); }
    // Core: value at (t_n, node, state i, age 0).
    std::size_t core_size() const { return nodes() * 4 * static_cast<std::size_t>(spec_.n_t + 1); }
    std::size_t core_index(int n, std::size_t node, State i) const {
        return (node * 4 + i.index()) * static_cast<std::size_t>(spec_.n_t + 1) + static_cast<std::size_t>(n);
    }

    int ages(int n) const { return q0_ + n + 1; }
    std::size_t row_offset(int n) const {
        const auto m = static_cast<std::size_t>(n);
        return m * static_cast<std::size_t>(q0_ + 1) + m * (m - (m > 0 ? 1 : 0)) / 2;
    }
    std::size_t column_size() const { return row_offset(spec_.n_t + 1); }
    std::size_t wedge_index(int n, int q) const { return row_offset(n) + static_cast<std::size_t>(q); }

    // Lattice image of node under a jump into j, with the factor applied to a
    // value read there. Past the lattice edge the node itself is returned with
    // factor 1 + delta alpha(j): values are continued by their linear growth.
    struct Target {
        std::size_t node;
        double scale;
    };
    Target jump_target(std::size_t node, State j) const {
        const std::size_t k = lattice_.successor(node, alpha(j));
        if (k == PriceLattice::npos) return {node, 1.0 + lattice_.delta() * alpha(j)};
        return {k, 1.0};
    }

private:
    GridSpec spec_;
    double T_, h_, s0_;
    int q0_;
    PriceLattice lattice_;
};

}  // namespace smm
