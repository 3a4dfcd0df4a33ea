#include "smm/value_field.hpp"

#include <algorithm>
#include <cmath>

#include "smm/ensemble.hpp"
#include "smm/errors.hpp"

namespace smm {

struct ValueField::Cache {
    explicit Cache(std::size_t n) : once(n), data(n) {}
    std::vector<std::once_flag> once;
    std::vector<std::vector<double>> data;
};

ValueField::ValueField(SemiMarkovKernel kernel, std::shared_ptr<const Grid> grid, Problem problem,
                       std::vector<double> core, SolveLog log)
    : kernel_(std::move(kernel)), grid_(std::move(grid)), problem_(std::move(problem)), core_(std::move(core)),
      log_(std::move(log)) {
    if (core_.size() != grid_->core_size()) throw ModelError("core size does not match the grid");
    const int qm = grid_->q_max() + 4;
    lam_.resize(static_cast<std::size_t>(qm));
    for (Side nu : kSides) hz_[side_index(nu)].resize(static_cast<std::size_t>(qm));
    for (int q = 0; q < qm; ++q) {
        const double s = q * grid_->h();
        lam_[static_cast<std::size_t>(q)] = kernel_.cumulative_hazard(s);
        for (Side nu : kSides) hz_[side_index(nu)][static_cast<std::size_t>(q)] = kernel_.hazard_at(nu, s);
    }
    cache_ = std::make_unique<Cache>(grid_->nodes() * 4);
}

ValueField::~ValueField() = default;
ValueField::ValueField(ValueField&&) noexcept = default;
ValueField& ValueField::operator=(ValueField&&) noexcept = default;

void ValueField::compute_column(std::size_t node, State i, std::span<double> out) const {
    const Grid& G = *grid_;
    const int nt = G.n_t();
    const double h = G.h();
    const double gp = problem_.g(G.lattice().price(node));

    std::vector<double> src;
    if (problem_.w) {
        src.resize(G.column_size());
        problem_.w->fill_column(G, node, i, src);
    }

    struct Jump {
        std::size_t base;
        double scale;
        const double* hz;
    };
    Jump jumps[2];
    int k = 0;
    for (State j : successors(i)) {
        const auto tgt = G.jump_target(node, j);
        jumps[k++] = {G.core_index(0, tgt.node, j), tgt.scale, hz_[side_index(transition_side(i, j))].data()};
    }

    for (int q = 0; q < G.ages(nt); ++q) out[G.wedge_index(nt, q)] = gp;
    for (int n = nt - 1; n >= 0; --n) {
        const int width = panel_width(nt - n);
        const auto& c = panel_weights(width);
        for (int q = 0; q < G.ages(n); ++q) {
            const double l0 = lam_[static_cast<std::size_t>(q)];
            double acc = 0.0;
            for (int r = 0; r <= width; ++r) {
                const auto qr = static_cast<std::size_t>(q + r);
                double integrand = 0.0;
                for (const Jump& jp : jumps)
                    integrand += jp.hz[qr] * core_[jp.base + static_cast<std::size_t>(n + r)] * jp.scale;
                if (problem_.w) integrand += src[G.wedge_index(n + r, q + r)];
                acc += c[static_cast<std::size_t>(r)] * std::exp(l0 - lam_[qr]) * integrand;
            }
            const double carry = std::exp(l0 - lam_[static_cast<std::size_t>(q + width)]) *
                                 out[G.wedge_index(n + width, q + width)];
            out[G.wedge_index(n, q)] = carry + h * acc;
        }
    }
}

std::span<const double> ValueField::column(std::size_t node, State i) const {
    const std::size_t col = node * 4 + i.index();
    std::call_once(cache_->once[col], [&] {
        std::vector<double> buf(grid_->column_size());
        compute_column(node, i, buf);
        cache_->data[col] = std::move(buf);
    });
    return cache_->data[col];
}

void ValueField::for_each_column(const std::function<void(std::size_t, State, std::span<const double>)>& fn) const {
    const long long columns = static_cast<long long>(grid_->nodes() * 4);
    FirstError err;
#pragma omp parallel
    {
        std::vector<double> buf(grid_->column_size());
#pragma omp for schedule(dynamic)
        for (long long col = 0; col < columns; ++col) {
            const std::size_t node = static_cast<std::size_t>(col) / 4;
            const State i(static_cast<int>(col % 4) + 1);
            err.run([&] {
                compute_column(node, i, buf);
                fn(node, i, buf);
            });
        }
    }
    err.rethrow();
}

std::size_t ValueField::node_of(double p) const {
    const auto k = grid_->lattice().locate(p);
    if (!k) throw DomainError("price " + std::to_string(p) + " is not a lattice node");
    return *k;
}

namespace {

// Cell index and fraction of x on a grid of step 1 clamped to [0, last].
std::pair<int, double> cell(double x, int last) {
    if (last <= 0) return {0, 0.0};
    int k = static_cast<int>(std::floor(x));
    k = std::clamp(k, 0, last - 1);
    return {k, std::clamp(x - k, 0.0, 1.0)};
}

}  // namespace

double ValueField::value_at(double t, double p, State i, double s) const {
    const Grid& G = *grid_;
    const double h = G.h();
    if (t < -1e-12 || t > G.T() * (1 + 1e-12)) throw DomainError("time outside [0, T]");
    if (s < -1e-12 || s > G.q0() * h + t + 1e-9) throw DomainError("age outside the reachable range");
    const std::size_t node = node_of(p);
    const auto col = column(node, i);

    auto [n, tau] = cell(t / h, G.n_t());
    int q = static_cast<int>(std::floor(s / h));
    double sigma = s / h - q;
    if (q < 0) q = 0, sigma = 0.0;
    // Keep (n, q) .. (n+1, q+1) inside the wedge.
    if (q >= G.ages(n + 1) - 1) q = G.ages(n + 1) - 2, sigma = 1.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    auto v = [&](int dn, int dq) { return col[G.wedge_index(n + dn, q + dq)]; };
    if (sigma <= tau) return v(0, 0) + tau * (v(1, 0) - v(0, 0)) + sigma * (v(1, 1) - v(1, 0));
    if (q + 1 >= G.ages(n)) {
        // (n, q+1) lies outside the wedge; only the lower triangle is available.
        return v(0, 0) + sigma * (v(1, 1) - v(0, 0));
    }
    return v(0, 0) + sigma * (v(0, 1) - v(0, 0)) + tau * (v(1, 1) - v(0, 1));
}

double ValueField::core_at(double t, double p, State i) const {
    const Grid& G = *grid_;
    if (t < -1e-12 || t > G.T() * (1 + 1e-12)) throw DomainError("time outside [0, T]");
    const std::size_t node = node_of(p);
    const auto [n, tau] = cell(t / G.h(), G.n_t());
    return (1.0 - tau) * core(n, node, i) + tau * core(n + 1, node, i);
}

double ValueField::core_after_jump_at(double t, double p, State j) const {
    const Grid& G = *grid_;
    if (t < -1e-12 || t > G.T() * (1 + 1e-12)) throw DomainError("time outside [0, T]");
    const std::size_t node = node_of(p);
    const auto [n, tau] = cell(t / G.h(), G.n_t());
    return (1.0 - tau) * core_after_jump(n, node, j) + tau * core_after_jump(n + 1, node, j);
}

}  // namespace smm
