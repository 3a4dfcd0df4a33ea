#include "smm/core_operator.hpp"

#include <cmath>

#include "smm/ensemble.hpp"
#include "smm/errors.hpp"

namespace smm {

namespace {

std::size_t tri(int m) { return static_cast<std::size_t>(m) * static_cast<std::size_t>(m + 1) / 2; }

}  // namespace

CoreOperator::CoreOperator(const SemiMarkovKernel& kernel, std::shared_ptr<const Grid> grid, const Problem& problem)
    : grid_(std::move(grid)) {
    const Grid& G = *grid_;
    const int nt = G.n_t();
    const double h = G.h();
    const std::size_t nodes = G.nodes();

    for (State i : kStates)
        for (State j : kStates)
            side_of_[i.index()][j.index()] = transition_side(i, j);

    std::vector<double> surv(static_cast<std::size_t>(nt + 1));
    for (int r = 0; r <= nt; ++r) surv[static_cast<std::size_t>(r)] = kernel.survival(r * h);

    for (Side nu : kSides) {
        auto& w = weights_[side_index(nu)];
        w.assign(tri(nt + 1), 0.0);
        std::vector<double> dens(static_cast<std::size_t>(nt + 1));
        for (int r = 0; r <= nt; ++r) dens[static_cast<std::size_t>(r)] = kernel.hazard_at(nu, r * h) * surv[static_cast<std::size_t>(r)];
        for (int m = 0; m <= nt; ++m) {
            const auto c = composite_weights(m);
            for (int r = 0; r <= m; ++r)
                w[tri(m) + static_cast<std::size_t>(r)] = h * c[static_cast<std::size_t>(r)] * dens[static_cast<std::size_t>(r)];
        }
    }

    payoff_.resize(nodes);
    for (std::size_t k = 0; k < nodes; ++k) payoff_[k] = problem.g(G.lattice().price(k));

    affine_.assign(G.core_size(), 0.0);
    const long long columns = static_cast<long long>(nodes * 4);
    FirstError err;
#pragma omp parallel
    {
        std::vector<double> src;
        if (problem.w) src.resize(G.column_size());
#pragma omp for schedule(dynamic)
        for (long long col = 0; col < columns; ++col) {
            const std::size_t node = static_cast<std::size_t>(col) / 4;
            const State i(static_cast<int>(col % 4) + 1);
            err.run([&] {
                if (problem.w) problem.w->fill_column(G, node, i, src);
            });
            for (int n = 0; n <= nt; ++n) {
                const int m = nt - n;
                double v = payoff_[node] * surv[static_cast<std::size_t>(m)];
                if (problem.w) {
                    const auto c = composite_weights(m);
                    double acc = 0.0;
                    for (int r = 0; r <= m; ++r)
                        acc += c[static_cast<std::size_t>(r)] * surv[static_cast<std::size_t>(r)] * src[G.wedge_index(n + r, r)];
                    v += h * acc;
                }
                affine_[G.core_index(n, node, i)] = v;
            }
        }
    }
    err.rethrow();
}

std::vector<double> CoreOperator::initial() const {
    const Grid& G = *grid_;
    std::vector<double> out(G.core_size());
    for (std::size_t node = 0; node < G.nodes(); ++node)
        for (State i : kStates)
            for (int n = 0; n <= G.n_t(); ++n) out[G.core_index(n, node, i)] = payoff_[node];
    return out;
}

void CoreOperator::apply(std::span<const double> in, std::span<double> out) const {
    const Grid& G = *grid_;
    const int nt = G.n_t();
    const auto stride = static_cast<std::size_t>(nt + 1);
    const long long columns = static_cast<long long>(G.nodes() * 4);
    bool finite = true;
#pragma omp parallel for schedule(static) reduction(&& : finite)
    for (long long col = 0; col < columns; ++col) {
        const std::size_t node = static_cast<std::size_t>(col) / 4;
        const State i(static_cast<int>(col % 4) + 1);
        std::size_t base[2];
        double scale[2];
        const double* w[2];
        int k = 0;
        for (State j : successors(i)) {
            const auto tgt = G.jump_target(node, j);
            base[k] = (tgt.node * 4 + j.index()) * stride;
            scale[k] = tgt.scale;
            w[k] = weights_[side_index(side_of_[i.index()][j.index()])].data();
            ++k;
        }
        const std::size_t self = static_cast<std::size_t>(col) * stride;
        for (int n = 0; n <= nt; ++n) {
            const int m = nt - n;
            const double* w0 = w[0] + tri(m);
            const double* w1 = w[1] + tri(m);
            const double* x0 = in.data() + base[0] + n;
            const double* x1 = in.data() + base[1] + n;
            double a0 = 0.0, a1 = 0.0;
            for (int r = 0; r <= m; ++r) {
                a0 += w0[r] * x0[r];
                a1 += w1[r] * x1[r];
            }
            const double v = affine_[self + static_cast<std::size_t>(n)] + scale[0] * a0 + scale[1] * a1;
            finite = finite && std::isfinite(v);
            out[self + static_cast<std::size_t>(n)] = v;
        }
    }
    if (!finite) throw NumericalError("non-finite value in operator application; check the growth of g and w");
}

double core_distance(const Grid& grid, std::span<const double> a, std::span<const double> b) {
    const auto stride = static_cast<std::size_t>(grid.n_t() + 1);
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double p = grid.lattice().price(k / stride / 4);
        d = std::max(d, std::abs(a[k] - b[k]) / (1.0 + p));
    }
    return d;
}

}  // namespace smm
