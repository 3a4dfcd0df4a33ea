#include "smm/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "smm/errors.hpp"

namespace smm {

double contraction_bound(const SemiMarkovKernel& kernel, const Grid& grid) {
    double kappa = 0.0;
    for (int q = 0; q <= grid.q_max(); ++q) {
        const double s = q * grid.h();
        kappa = std::max(kappa, -std::expm1(-(kernel.cumulative_hazard(grid.T() + s) - kernel.cumulative_hazard(s))));
    }
    return kappa;
}

std::vector<double> apply_T_age0(const SemiMarkovKernel& kernel, std::shared_ptr<const Grid> grid,
                                 const Problem& problem, std::span<const double> core_in) {
    CoreOperator op(kernel, std::move(grid), problem);
    std::vector<double> out(op.size());
    op.apply(core_in, out);
    return out;
}

CoreSolution solve_fixed_point(const SemiMarkovKernel& kernel, std::shared_ptr<const Grid> grid,
                               const Problem& problem, Execution mode) {
    const Grid& G = *grid;
    CoreOperator op(kernel, grid, problem);
    CoreSolution sol;
    sol.log.kappa = contraction_bound(kernel, G);
    std::vector<double> cur = op.initial();
    std::vector<double> next(cur.size());
    for (int it = 1; it <= G.spec().max_iter; ++it) {
        if (mode == Execution::Parallel)
            op.apply(cur, next);
        else
            apply_reference(kernel, G, problem, cur, next);
        const double d = core_distance(G, cur, next);
        if (!sol.log.diffs.empty())
            sol.log.ratios.push_back(sol.log.diffs.back() > 0.0 ? d / sol.log.diffs.back() : 0.0);
        sol.log.diffs.push_back(d);
        cur.swap(next);
        sol.log.iterations = it;
        if (d < G.spec().tol_fp) {
            sol.core = std::move(cur);
            return sol;
        }
    }
    std::ostringstream msg;
    msg << "fixed-point iteration did not reach " << G.spec().tol_fp << " in " << G.spec().max_iter
        << " steps; last difference " << sol.log.diffs.back();
    throw NonConvergence(msg.str(), sol.log.ratios);
}

ValueField extend_to_age(const SemiMarkovKernel& kernel, std::shared_ptr<const Grid> grid, Problem problem,
                         CoreSolution solution) {
    return ValueField(kernel, std::move(grid), std::move(problem), std::move(solution.core), std::move(solution.log));
}

ValueField solve_pi(const SemiMarkovKernel& kernel, std::shared_ptr<const Grid> grid) {
    Problem problem = Problem::terminal([](double p) { return p; });
    auto sol = solve_fixed_point(kernel, grid, problem);
    return extend_to_age(kernel, std::move(grid), std::move(problem), std::move(sol));
}

std::vector<double> column_residual(const ValueField& field, std::size_t node, State i,
                                    std::span<const double> column) {
    const Grid& G = field.grid();
    const SemiMarkovKernel& kernel = field.kernel();
    const double h = G.h();
    std::vector<double> res(G.column_size(), std::numeric_limits<double>::quiet_NaN());
    if (G.lattice().level(node) >= G.lattice().n_max()) return res;

    std::vector<double> src;
    if (field.problem().w) {
        src.resize(G.column_size());
        field.problem().w->fill_column(G, node, i, src);
    }
    for (int n = 1; n < G.n_t(); ++n) {
        for (int q = 1; q < G.ages(n) - 1; ++q) {
            const double s = q * h;
            const double phi = column[G.wedge_index(n, q)];
            double r = (column[G.wedge_index(n + 1, q + 1)] - column[G.wedge_index(n - 1, q - 1)]) / (2.0 * h);
            for (State j : successors(i))
                r += kernel.directed_hazard(i, j, s) * (field.core_after_jump(n, node, j) - phi);
            if (!src.empty()) r += src[G.wedge_index(n, q)];
            res[G.wedge_index(n, q)] = r;
        }
    }
    return res;
}

ResidualStats pde_residual(const ValueField& field) {
    const Grid& G = field.grid();
    const std::size_t columns = G.nodes() * 4;
    std::vector<double> col_max(columns, 0.0), col_sum(columns, 0.0);
    std::vector<std::size_t> col_count(columns, 0);
    field.for_each_column([&](std::size_t node, State i, std::span<const double> column) {
        const auto res = column_residual(field, node, i, column);
        const double scale = 1.0 + G.lattice().price(node);
        const std::size_t c = node * 4 + i.index();
        for (double r : res) {
            if (std::isnan(r)) continue;
            const double a = std::abs(r) / scale;
            col_max[c] = std::max(col_max[c], a);
            col_sum[c] += a;
            ++col_count[c];
        }
    });
    ResidualStats st;
    double total = 0.0;
    for (std::size_t c = 0; c < columns; ++c) {
        st.max = std::max(st.max, col_max[c]);
        total += col_sum[c];
        st.count += col_count[c];
    }
    st.mean = st.count > 0 ? total / static_cast<double>(st.count) : 0.0;
    return st;
}

}  // namespace smm
