#include <cmath>

#include "smm/core_operator.hpp"

namespace smm {

void apply_reference(const SemiMarkovKernel& kernel, const Grid& grid, const Problem& problem,
                     std::span<const double> in, std::span<double> out) {
    const int nt = grid.n_t();
    const double h = grid.h();
    const double T = grid.T();
    const PriceLattice& lat = grid.lattice();
    for (std::size_t node = 0; node < grid.nodes(); ++node) {
        const double p = lat.price(node);
        for (State i : kStates) {
            for (int n = 0; n <= nt; ++n) {
                const double t = grid.t(n);
                const int m = nt - n;
                const auto c = composite_weights(m);
                double v = problem.g(p) * kernel.survival(T - t);
                for (int r = 0; r <= m; ++r) {
                    const double y = r * h;
                    double integrand = 0.0;
                    for (State j : successors(i)) {
                        const auto tgt = grid.jump_target(node, j);
                        const double psi = in[grid.core_index(n + r, tgt.node, j)] * tgt.scale;
                        integrand += kernel.directed_hazard(i, j, y) * kernel.survival(y) * psi;
                    }
                    if (problem.w) integrand += kernel.survival(y) * problem.w->at(grid.t(n + r), p, i, y);
                    v += h * c[static_cast<std::size_t>(r)] * integrand;
                }
                out[grid.core_index(n, node, i)] = v;
            }
        }
    }
}

}  // namespace smm
