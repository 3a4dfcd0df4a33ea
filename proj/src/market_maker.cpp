#include "smm/market_maker.hpp"

#include <algorithm>
#include <cmath>

#include "smm/errors.hpp"
#include "smm/solver.hpp"

namespace smm {

void MarketMakingSpec::validate(const MarkLayout& layout) const {
    if (K < 1) throw ModelError("K must be >= 1");
    if (K != layout.max_size()) throw ModelError("K must equal the largest small-order size of the size laws");
    if (!(epsilon >= 0.0)) throw ModelError("epsilon must be >= 0");
    if (!(eta >= 0.0)) throw ModelError("eta must be >= 0");
}

DecisionField::DecisionField(std::shared_ptr<const ValueField> pi, MarkLayout layout, MarketMakingSpec spec)
    : pi_(std::move(pi)), layout_(std::move(layout)), spec_(spec) {
    if (!pi_) throw DependencyError("the decision functions need a solved pi field");
    spec_.validate(layout_);
    for (Side nu : kSides) kbar_[side_index(nu)] = layout_.size_law(nu).mean();
}

double DecisionField::m(double t, double p, State i, double s, State j) const {
    if (equivalent(i, j)) throw InvalidTransition("m_j needs j not equivalent to i");
    const double delta = layout_.kernel().delta();
    const int a = alpha(j);
    const Side nu = alpha_bar(j);
    const double e = spec_.edge(p, delta);
    const double pi_here = pi_->value_at(t, p, i, s);
    const double pi_jump = pi_->core_after_jump_at(t, p, j);
    return layout_.order_rate(nu)(s) * kbar_[side_index(nu)] * (a * (p - pi_here) + e) +
           layout_.kernel().directed_hazard(i, j, s) * spec_.K * (a * (p - pi_jump) + e);
}

double DecisionField::m_node(int n, std::size_t node, State i, int q, State j, double pi_here) const {
    const Grid& G = pi_->grid();
    const double p = G.lattice().price(node);
    const double s = q * G.h();
    const int a = alpha(j);
    const Side nu = alpha_bar(j);
    const double e = spec_.edge(p, layout_.kernel().delta());
    const double pi_jump = pi_->core_after_jump(n, node, j);
    return layout_.order_rate(nu)(s) * kbar_[side_index(nu)] * (a * (p - pi_here) + e) +
           layout_.kernel().directed_hazard(i, j, s) * spec_.K * (a * (p - pi_jump) + e);
}

Control DecisionField::control(double t, double p, State i, double s) const {
    Control l;
    for (State j : successors(i)) {
        const int bit = m(t, p, i, s, j) > 0.0 ? 1 : 0;
        if (alpha(j) > 0)
            l.plus = bit;
        else
            l.minus = bit;
    }
    return l;
}

double DecisionField::at(double t, double p, State i, double s) const {
    double w = 0.0;
    for (State j : successors(i)) w += std::max(m(t, p, i, s, j), 0.0);
    return w;
}

void DecisionField::fill_column(const Grid& grid, std::size_t node, State i, std::span<double> out) const {
    if (&grid != &pi_->grid()) {
        Source::fill_column(grid, node, i, out);
        return;
    }
    const auto pi_col = pi_->column(node, i);
    for (int n = 0; n <= grid.n_t(); ++n) {
        for (int q = 0; q < grid.ages(n); ++q) {
            const std::size_t k = grid.wedge_index(n, q);
            double w = 0.0;
            for (State j : successors(i)) w += std::max(m_node(n, node, i, q, j, pi_col[k]), 0.0);
            out[k] = w;
        }
    }
}

double compute_m_j(const DecisionField& field, double t, double p, State i, double s, State j) {
    return field.m(t, p, i, s, j);
}

Policy optimal_policy(std::shared_ptr<const DecisionField> field) {
    if (field->spec().eta > 0.0) throw UnsupportedError("η>0 unsupported: the bang-bang policy is derived for eta = 0");
    return {"Optimal", [field](double t, double p, State i, double s) { return field->control(t, p, i, s); }};
}

ValueField solve_u(std::shared_ptr<const DecisionField> field) {
    if (field->spec().eta > 0.0) throw UnsupportedError("η>0 unsupported: only the risk-neutral case eta = 0 is solved");
    const ValueField& pi = field->pi();
    Problem problem{[](double) { return 0.0; }, field};
    auto sol = solve_fixed_point(pi.kernel(), pi.grid_ptr(), problem);
    return extend_to_age(pi.kernel(), pi.grid_ptr(), std::move(problem), std::move(sol));
}

double value_J0(const ValueField& pi, const ValueField& u, double t, double p, State i, double s, double x, double y) {
    return x + y * pi.value_at(t, p, i, s) + u.value_at(t, p, i, s);
}

double holding_value(const ValueField& pi, double t, double p, State i, double s, double x, double y, double eta) {
    return x + y * pi.value_at(t, p, i, s) - eta * y * y;
}

BoundValue wealth_bound(const MarketMakingSpec& spec, const MarkLayout& layout, double t, double p, double x,
                        double y, double T) {
    const double delta = layout.kernel().delta();
    const double c = 2.0 * (spec.K + 1) * std::max(layout.kernel().c1(), layout.c2());
    const double tau = T - t;
    BoundValue b;
    b.value = x + y * p + spec.K * c * tau * spec.epsilon;
    if (delta > 0.0) {
        b.value += spec.K * p * (1.0 + delta) / delta * std::expm1(c * tau * delta);
    } else {
        b.value += spec.K * p * (1.0 + delta) * c * tau;
        b.limit_form = true;
    }
    return b;
}

}  // namespace smm
