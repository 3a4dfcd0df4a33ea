#include "smm/simulator.hpp"

#include <cmath>
#include <string>

namespace smm {

double sample_holding(const SemiMarkovKernel& kernel, double s0, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("holding time draw must lie in (0,1), got " + std::to_string(u));
    if (!(s0 >= 0.0)) throw DomainError("negative age");
    // Survival ratio exp(-(L(s0+w) - L(s0))) = 1 - u.
    const double target = -std::log1p(-u);
    const double h0 = kernel.total_hazard(s0);
    if (kernel.constant_hazards()) return target / h0;

    const double base = kernel.cumulative_hazard(s0);
    auto excess = [&](double w) { return kernel.cumulative_hazard(s0 + w) - base - target; };

    // h is nondecreasing, so L(s0+w) - L(s0) >= h(s0) w and w <= target / h(s0).
    double lo = 0.0;
    double hi = target / h0;
    while (excess(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    double w = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double g = excess(w);
        if (std::abs(g) <= 1e-14 * (1.0 + target)) break;
        if (g < 0.0)
            lo = w;
        else
            hi = w;
        double next = w - g / kernel.total_hazard(s0 + w);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo <= 1e-16 * hi) break;
        w = next;
    }
    return w;
}

State sample_transition(const SemiMarkovKernel& kernel, State i, double y, double u) {
    const auto succ = successors(i);
    return u < kernel.transition_prob(i, succ[0], y) ? succ[0] : succ[1];
}

Path simulate_price_path(const SemiMarkovKernel& kernel, const MarketState& start, double t0, double T,
                         Stream& rng) {
    Path path;
    path.t0 = t0;
    path.horizon = T;
    path.initial = start;
    MarketState cur = start;
    double t = t0;
    while (true) {
        const double w = sample_holding(kernel, cur.s, rng.uniform());
        if (t + w > T) break;
        t += w;
        const double age = cur.s + w;
        const State j = sample_transition(kernel, cur.i, age, rng.uniform());
        JumpEvent ev;
        ev.time = t;
        ev.kind = MarkEvent::Kind::BigJump;
        ev.target = j;
        ev.side = alpha_bar(j);
        ev.price_at_execution = cur.p;
        ev.pre = {cur.p, cur.i, age};
        cur = {cur.p * kernel.jump_factor(j), j, 0.0};
        ev.post = cur;
        path.events.push_back(ev);
        ++path.big_jumps;
    }
    cur.s += T - t;
    path.terminal = cur;
    return path;
}

Path simulate_price_path(const SemiMarkovKernel& kernel, const MarketState& start, double t0, double T,
                         std::uint64_t seed) {
    Stream rng(seed);
    return simulate_price_path(kernel, start, t0, T, rng);
}

std::pair<double, long long> execution_change(const MarkEvent& ev, const Control& l, double p, double delta,
                                              int K, double epsilon) {
    if (ev.kind == MarkEvent::Kind::SmallOrder) {
        const int nu = sign(ev.side);
        const long long units = static_cast<long long>(l.on(ev.side)) * ev.size;
        if (units == 0) return {0.0, 0};
        const double dx = nu * static_cast<double>(units) * (p * (1.0 + nu * delta) - nu * epsilon);
        return {dx, -nu * units};
    }
    if (ev.kind == MarkEvent::Kind::BigJump) {
        const int a = alpha(ev.target);
        const long long units = static_cast<long long>(l.on(alpha_bar(ev.target))) * K;
        if (units == 0) return {0.0, 0};
        const double dx = a * static_cast<double>(units) * (p * (1.0 + delta * a) - a * epsilon);
        return {dx, -a * units};
    }
    return {0.0, 0};
}

namespace {

// Thinning loop shared by the controlled and uncontrolled runs. With a null
// policy the agent is ignored and small orders are only counted.
Path thin(const MarkLayout& layout, const Policy* policy, double epsilon, const MarketState& start,
          const AgentState& agent, double t0, double T, Stream& rng) {
    const SemiMarkovKernel& kernel = layout.kernel();
    const double bound = layout.mark_bound();
    const int K = layout.max_size();
    Path path;
    path.t0 = t0;
    path.horizon = T;
    path.initial = start;
    path.agent_initial = agent;
    MarketState cur = start;
    AgentState wealth = agent;
    double t = t0;
    while (true) {
        const double dt = rng.exponential(bound);
        if (t + dt > T) break;
        t += dt;
        cur.s += dt;
        ++path.proposals;
        const MarkEvent ev = layout.classify(cur.i, cur.s, rng.uniform(bound));
        if (ev.kind == MarkEvent::Kind::NoEvent) continue;
        ++path.accepted;
        if (ev.kind == MarkEvent::Kind::SmallOrder) {
            ++path.small_orders;
            if (policy == nullptr) continue;
        } else {
            ++path.big_jumps;
        }
        JumpEvent rec;
        rec.time = t;
        rec.kind = ev.kind;
        rec.target = ev.target;
        rec.side = ev.side;
        rec.size = ev.kind == MarkEvent::Kind::SmallOrder ? ev.size : K;
        rec.price_at_execution = cur.p;
        rec.pre = cur;
        rec.agent_pre = wealth;
        if (policy != nullptr) {
            rec.control = (*policy)(t, cur.p, cur.i, cur.s);
            const auto [dx, dy] = execution_change(ev, rec.control, cur.p, kernel.delta(), K, epsilon);
            wealth.x += dx;
            wealth.y += dy;
            rec.executed = dy;
        }
        if (ev.kind == MarkEvent::Kind::BigJump) cur = {cur.p * kernel.jump_factor(ev.target), ev.target, 0.0};
        rec.post = cur;
        rec.agent_post = wealth;
        path.events.push_back(rec);
    }
    cur.s += T - t;
    path.terminal = cur;
    path.agent_terminal = wealth;
    return path;
}

}  // namespace

Path simulate_price_path_thinning(const MarkLayout& layout, const MarketState& start, double t0, double T,
                                  Stream& rng) {
    return thin(layout, nullptr, 0.0, start, AgentState{}, t0, T, rng);
}

Path simulate_price_path_thinning(const MarkLayout& layout, const MarketState& start, double t0, double T,
                                  std::uint64_t seed) {
    Stream rng(seed);
    return simulate_price_path_thinning(layout, start, t0, T, rng);
}

Path simulate_controlled_path(const MarkLayout& layout, const Policy& policy, double epsilon,
                              const MarketState& start, const AgentState& agent, double t0, double T, Stream& rng) {
    return thin(layout, &policy, epsilon, start, agent, t0, T, rng);
}

Path simulate_controlled_path(const MarkLayout& layout, const Policy& policy, double epsilon,
                              const MarketState& start, const AgentState& agent, double t0, double T,
                              std::uint64_t seed) {
    Stream rng(seed);
    return simulate_controlled_path(layout, policy, epsilon, start, agent, t0, T, rng);
}

}  // namespace smm
