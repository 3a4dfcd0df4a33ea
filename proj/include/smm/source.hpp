#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "smm/grid.hpp"
#include "smm/state_space.hpp"

namespace smm {

// Source term w(t, p, i, s) of the terminal value problem.
class Source {
public:
    virtual ~Source() = default;

    virtual double at(double t, double p, State i, double s) const = 0;

    // out[grid.wedge_index(n, q)] = w(t_n, price(node), i, q h) over the wedge.
    virtual void fill_column(const Grid& grid, std::size_t node, State i, std::span<double> out) const;
};

class FunctionSource : public Source {
public:
    using Fn = std::function<double(double t, double p, State i, double s)>;

    explicit FunctionSource(Fn fn) : fn_(std::move(fn)) {}
    double at(double t, double p, State i, double s) const override { return fn_(t, p, i, s); }

private:
    Fn fn_;
};

// Terminal payoff g and source w (null means w = 0).
struct Problem {
    std::function<double(double)> g;
    std::shared_ptr<const Source> w;

    static Problem terminal(std::function<double(double)> g) { return {std::move(g), nullptr}; }
};

}  // namespace smm
