#pragma once

#include <memory>
#include <vector>

#include "smm/mark_layout.hpp"
#include "smm/policy.hpp"
#include "smm/source.hpp"
#include "smm/value_field.hpp"

namespace smm {

struct MarketMakingSpec {
    int K = 1;             // size of the agent's limit orders
    double epsilon = 0.0;  // fixed cost per transaction
    double eta = 0.0;      // risk aversion; only 0 is solved
    // Use p delta - epsilon (the per-unit edge of an execution at p(1 +- delta))
    // in the decision functions instead of delta - epsilon.
    bool portfolio_consistent_mj = false;

    void validate(const MarkLayout& layout) const;
    double edge(double p, double delta) const { return (portfolio_consistent_mj ? p * delta : delta) - epsilon; }
};

// Decision functions
//   m_j = lambda_{a(j)}(s) kbar_{a(j)} (alpha(j) (p - pi(t,p,i,s)) + e)
//       + h_ij(s) K (alpha(j) (p - pi(t, p (1 + delta alpha(j)), j, 0)) + e),
// e = edge(p, delta), a(j) = alpha_bar(j), kbar the mean small-order size. As a
// source, the field is w = sum_j max(m_j, 0), the running reward of u.
class DecisionField : public Source {
public:
    DecisionField(std::shared_ptr<const ValueField> pi, MarkLayout layout, MarketMakingSpec spec);

    const ValueField& pi() const { return *pi_; }
    const MarkLayout& layout() const { return layout_; }
    const MarketMakingSpec& spec() const { return spec_; }

    // Throws InvalidTransition for j equivalent to i.
    double m(double t, double p, State i, double s, State j) const;
    // Same on a grid node (wedge row n, age index q).
    double m_node(int n, std::size_t node, State i, int q, State j, double pi_here) const;

    Control control(double t, double p, State i, double s) const;

    double at(double t, double p, State i, double s) const override;
    void fill_column(const Grid& grid, std::size_t node, State i, std::span<double> out) const override;

private:
    std::shared_ptr<const ValueField> pi_;
    MarkLayout layout_;
    MarketMakingSpec spec_;
    double kbar_[2];
};

// Free-function form of DecisionField::m.
double compute_m_j(const DecisionField& field, double t, double p, State i, double s, State j);

// l_{alpha_bar(j)} = 1 iff m_j > 0. Throws UnsupportedError for eta > 0.
Policy optimal_policy(std::shared_ptr<const DecisionField> field);

// u = E[ int_t^T sum_j max(m_j, 0) dv ]: the terminal value problem with g = 0
// and the decision field as source, on the grid of pi. Throws
// UnsupportedError for eta > 0.
ValueField solve_u(std::shared_ptr<const DecisionField> field);

double value_J0(const ValueField& pi, const ValueField& u, double t, double p, State i, double s, double x, double y);
double holding_value(const ValueField& pi, double t, double p, State i, double s, double x, double y, double eta);

struct BoundValue {
    double value = 0.0;
    bool limit_form = false;  // delta = 0: the delta -> 0 limit was used
};

// x + y p + K p (1 + delta)/delta (e^{c (T-t) delta} - 1) + K c (T - t) epsilon
// with c = 2 (K + 1) max(c1, c2).
BoundValue wealth_bound(const MarketMakingSpec& spec, const MarkLayout& layout, double t, double p, double x,
                        double y, double T);

}  // namespace smm
