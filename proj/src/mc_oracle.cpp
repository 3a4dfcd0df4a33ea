#include "smm/mc_oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "smm/errors.hpp"

namespace smm {

double simpson(const std::function<double(double)>& fn, double a, double b, double panel) {
    if (!(b > a)) return 0.0;
    int n = static_cast<int>(std::ceil((b - a) / panel));
    n = std::max(2, n + (n % 2));
    const double h = (b - a) / n;
    double acc = fn(a) + fn(b);
    for (int k = 1; k < n; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * fn(a + k * h);
    return acc * h / 3.0;
}

double integrate_segment(const Source& w, double ta, double tb, double p, State i, double sa, double panel) {
    return simpson([&](double v) { return w.at(v, p, i, sa + (v - ta)); }, ta, tb, panel);
}

McEstimate estimate_terminal_value(const SemiMarkovKernel& kernel, const std::function<double(double)>& g,
                                   const Source* w, const StartPoint& start, double T, std::size_t n_paths,
                                   std::uint64_t seed, Execution mode) {
    if (n_paths < 1) throw std::invalid_argument("estimate_terminal_value needs n_paths >= 1");
    const auto sample = run_ensemble<double>(n_paths, mode, [&](std::size_t k) {
        Stream rng(seed, k);
        const Path path = simulate_price_path(kernel, {start.p, start.i, start.s}, start.t, T, rng);
        double value = g(path.terminal.p);
        if (w != nullptr) {
            double t = start.t;
            MarketState cur = path.initial;
            for (const JumpEvent& ev : path.events) {
                value += integrate_segment(*w, t, ev.time, cur.p, cur.i, cur.s);
                t = ev.time;
                cur = ev.post;
            }
            value += integrate_segment(*w, t, T, cur.p, cur.i, cur.s);
        }
        return value;
    });
    return summarize(sample, seed);
}

double z_compare(double solver_value, const McEstimate& mc) {
    if (mc.se > 0.0) return (solver_value - mc.mean) / mc.se;
    if (std::abs(solver_value - mc.mean) <= 1e-12 * (1.0 + std::abs(mc.mean))) return 0.0;
    throw NumericalError("Monte-Carlo estimate has zero standard error but differs from the solver value");
}

double generator(const MarkLayout& layout, const TestFunction& psi, double p, State i, double s, double x, long long y,
                 const Control& l, double epsilon, bool small_orders) {
    const SemiMarkovKernel& kernel = layout.kernel();
    const double delta = kernel.delta();
    const int K = layout.max_size();
    const double here = psi.value(p, i, s, x, y);
    double a = psi.ds(p, i, s, x, y);
    for (State j : successors(i)) {
        const auto [dx, dy] = execution_change(MarkEvent::big(j), l, p, delta, K, epsilon);
        a += kernel.directed_hazard(i, j, s) * (psi.value(p * kernel.jump_factor(j), j, 0.0, x + dx, y + dy) - here);
    }
    if (small_orders && (l.plus != 0 || l.minus != 0)) {
        for (Side nu : kSides) {
            const double rate = layout.order_rate(nu)(s);
            const SizeLaw& law = layout.size_law(nu);
            for (int k = 0; k <= law.max_size(); ++k) {
                const auto [dx, dy] = execution_change(MarkEvent::small(nu, k), l, p, delta, K, epsilon);
                a += rate * law.prob(k) * (psi.value(p, i, s, x + dx, y + dy) - here);
            }
        }
    }
    return a;
}

DynkinResult dynkin_check(const MarkLayout& layout, const TestFunction& psi, const DynkinSetup& setup) {
    if (setup.n_paths < 1) throw std::invalid_argument("dynkin_check needs n_paths >= 1");
    const Control l = setup.controlled ? setup.l : Control{0, 0};
    const Policy policy = Policy::constant(l);
    const auto sample = run_ensemble<double>(setup.n_paths, setup.mode, [&](std::size_t k) {
        Stream rng(setup.seed, k);
        const Path path = setup.controlled ? simulate_controlled_path(layout, policy, setup.epsilon, setup.start,
                                                                      setup.agent, 0.0, setup.horizon, rng)
                                           : simulate_price_path(layout.kernel(), setup.start, 0.0, setup.horizon, rng);
        MarketState cur = path.initial;
        AgentState ag = setup.agent;
        double t = 0.0;
        double integral = 0.0;
        auto segment = [&](double tb) {
            const double s0 = cur.s;
            integral += simpson(
                [&](double v) {
                    return generator(layout, psi, cur.p, cur.i, s0 + (v - t), ag.x, ag.y, l, setup.epsilon,
                                     setup.small_orders);
                },
                t, tb);
        };
        for (const JumpEvent& ev : path.events) {
            segment(ev.time);
            t = ev.time;
            cur = ev.post;
            if (setup.controlled) ag = ev.agent_post;
        }
        segment(setup.horizon);
        const double start = psi.value(path.initial.p, path.initial.i, path.initial.s, setup.agent.x, setup.agent.y);
        const AgentState end_agent = setup.controlled ? path.agent_terminal : setup.agent;
        const double end = psi.value(path.terminal.p, path.terminal.i, path.terminal.s, end_agent.x, end_agent.y);
        return end - start - integral;
    });
    DynkinResult r;
    r.name = psi.name;
    r.estimate = summarize(sample, setup.seed);
    if (r.estimate.se > 0.0)
        r.z = r.estimate.mean / r.estimate.se;
    else
        r.z = r.estimate.mean == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), r.estimate.mean);
    return r;
}

}  // namespace smm
