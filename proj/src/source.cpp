#include "smm/source.hpp"

namespace smm {

void Source::fill_column(const Grid& grid, std::size_t node, State i, std::span<double> out) const {
    const double p = grid.lattice().price(node);
    for (int n = 0; n <= grid.n_t(); ++n) {
        const double t = grid.t(n);
        for (int q = 0; q < grid.ages(n); ++q) out[grid.wedge_index(n, q)] = at(t, p, i, q * grid.h());
    }
}

}  // namespace smm
