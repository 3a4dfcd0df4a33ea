#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "smm/ensemble.hpp"
#include "smm/errors.hpp"
#include "smm/lattice.hpp"
#include "smm/simulator.hpp"
#include "smm/stats.hpp"

using namespace smm;
using doctest::Approx;

namespace {

// Is p = p0 (1+d)^a (1-d)^b for some a, b >= 0 with a + b <= n?
bool on_lattice(double p, double p0, double d, int n = 400) {
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b)
            if (std::abs(p - p0 * std::pow(1 + d, a) * std::pow(1 - d, b)) <= 1e-9 * p) return true;
    return false;
}

MarkLayout layout_of(const char* name) { return test::preset(name).layout(); }

}  // namespace

TEST_CASE("holding time inversion") {
    const auto unit = test::constant_kernel(0.5, 0.5);
    CHECK(sample_holding(unit, 0.0, 1.0 - std::exp(-1.0)) == Approx(1.0).epsilon(1e-12));
    CHECK(sample_holding(unit, 7.0, 1.0 - std::exp(-1.0)) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(sample_holding(unit, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(sample_holding(unit, 0.0, 1.0), DomainError);

    const SemiMarkovKernel sat = test::preset("saturating").kernel();
    for (double s0 : {0.0, 0.8, 5.0})
        for (double u : {1e-9, 0.1, 0.5, 0.9, 1.0 - 1e-9}) {
            const double w = sample_holding(sat, s0, u);
            CHECK(w > 0.0);
            CHECK(1.0 - sat.conditional_survival(s0, w) == Approx(u).epsilon(1e-10));
        }
}

TEST_CASE("transition sampling") {
    const auto sym = test::constant_kernel(1.0, 1.0);
    CHECK(sample_transition(sym, State(1), 0.4, 0.25) == State(3));
    // cumulative weights 0.6 (continuation 1 -> 3) then 1.0
    const auto k = test::constant_kernel(0.6, 0.4);
    CHECK(sample_transition(k, State(1), 2.0, 0.95) == reversal_successor(State(1)));
    CHECK(sample_transition(k, State(1), 2.0, 0.55) == continuation_successor(State(1)));
    // from state 2 the reversal comes first: weights 0.4 then 1.0
    CHECK(sample_transition(k, State(2), 2.0, 0.35) == reversal_successor(State(2)));
    CHECK(sample_transition(k, State(2), 2.0, 0.95) == continuation_successor(State(2)));
}

TEST_CASE("zero tick keeps the price constant") {
    const SemiMarkovKernel k(HazardSpec::constant(1.0), HazardSpec::constant(2.0), 0.0);
    const MarkLayout layout(k, HazardSpec::constant(1.0), HazardSpec::constant(1.0), SizeLaw({0.5, 0.5}),
                            SizeLaw({0.5, 0.5}));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Path a = simulate_price_path(k, {50.0, State(1), 0.0}, 0.0, 3.0, seed);
        const Path b = simulate_price_path_thinning(layout, {50.0, State(1), 0.0}, 0.0, 3.0, seed);
        CHECK(a.big_jumps > 0);
        CHECK(a.terminal.p == 50.0);
        CHECK(b.terminal.p == 50.0);
        for (const auto& ev : a.events) CHECK(ev.post.p == 50.0);
    }
}

TEST_CASE("hold policy never trades") {
    const auto layout = layout_of("saturating");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Path p = simulate_controlled_path(layout, Policy::hold(), 0.3, {100.0, State(2), 0.0}, {12.5, 3}, 0.0,
                                                1.0, seed);
        CHECK(p.agent_terminal.x == 12.5);
        CHECK(p.agent_terminal.y == 3);
    }
}

TEST_CASE("execution accounting") {
    const auto [dx, dy] = execution_change(MarkEvent::small(Side::Plus, 2), {1, 0}, 100.0, 0.01, 3, 0.1);
    CHECK(dx == Approx(201.8));
    CHECK(dy == -2);
    const auto [bx, by] = execution_change(MarkEvent::big(State(3)), {0, 1}, 100.0, 0.01, 3, 0.1);
    CHECK(bx == Approx(-297.3));
    CHECK(by == 3);
    // no quote on the hit side: nothing happens
    const auto [zx, zy] = execution_change(MarkEvent::big(State(4)), {0, 1}, 100.0, 0.01, 3, 0.1);
    CHECK(zx == 0.0);
    CHECK(zy == 0);
    const auto [nx, ny] = execution_change(MarkEvent::none(), {1, 1}, 100.0, 0.01, 3, 0.1);
    CHECK(nx == 0.0);
    CHECK(ny == 0);
}

TEST_CASE("one event changes x + y p by at most K (p delta + epsilon)") {
    const double delta = 0.01, eps = 0.25;
    const int K = 3;
    for (double p : {0.5, 1.0, 100.0})
        for (int lp = 0; lp <= 1; ++lp)
            for (int lm = 0; lm <= 1; ++lm) {
                const Control l{lp, lm};
                std::vector<std::pair<MarkEvent, double>> events;
                for (Side nu : kSides)
                    for (int k = 0; k <= K; ++k) events.push_back({MarkEvent::small(nu, k), p});
                for (State j : kStates) events.push_back({MarkEvent::big(j), p * (1 + delta * alpha(j))});
                for (const auto& [ev, p_post] : events) {
                    const auto [dx, dy] = execution_change(ev, l, p, delta, K, eps);
                    CHECK(dx + static_cast<double>(dy) * p_post <= K * (p * delta + eps) + 1e-12);
                }
            }
}

TEST_CASE("simulated prices stay on the lattice") {
    const auto layout = layout_of("saturating");
    const MarketState start{100.0, State(2), 0.3};
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Path a = simulate_price_path(layout.kernel(), start, 0.0, 2.0, seed);
        const Path b = simulate_price_path_thinning(layout, start, 0.0, 2.0, seed);
        const Path c =
            simulate_controlled_path(layout, Policy::always_quote(), 0.3, start, {0.0, 0}, 0.0, 2.0, seed);
        for (const Path* p : {&a, &b, &c}) {
            CHECK(on_lattice(p->terminal.p, 100.0, 0.01));
            for (const auto& ev : p->events) CHECK(on_lattice(ev.post.p, 100.0, 0.01));
        }
    }
}

TEST_CASE("event records are consistent") {
    const auto layout = layout_of("asymmetric");
    const Path p =
        simulate_controlled_path(layout, Policy::always_quote(), 0.3, {100.0, State(1), 0.0}, {0.0, 0}, 0.0, 5.0, 3);
    REQUIRE(!p.events.empty());
    double t = 0.0;
    AgentState agent = p.agent_initial;
    MarketState m = p.initial;
    for (const auto& ev : p.events) {
        CHECK(ev.time >= t);
        CHECK(ev.time <= 5.0);
        CHECK(ev.pre.p == m.p);
        CHECK(ev.pre.s == Approx(m.s + ev.time - t));
        CHECK(ev.agent_pre.x == agent.x);
        if (ev.kind == MarkEvent::Kind::BigJump) {
            CHECK(!equivalent(ev.pre.i, ev.post.i));
            CHECK(ev.post.s == 0.0);
        } else {
            CHECK(ev.post.p == ev.pre.p);
        }
        t = ev.time;
        m = ev.post;
        agent = ev.agent_post;
    }
    CHECK(p.agent_terminal.x == agent.x);
    CHECK(p.agent_terminal.y == agent.y);
    CHECK(p.terminal.p == m.p);
}

TEST_CASE("every state and both directions are reached") {
    const auto k = test::preset("saturating").kernel();
    std::set<int> states;
    int ups = 0, downs = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Path p = simulate_price_path(k, {100.0, State(1), 0.0}, 0.0, 1.0, seed);
        for (const auto& ev : p.events) {
            states.insert(ev.post.i.value());
            (ev.post.p > ev.pre.p ? ups : downs)++;
        }
    }
    CHECK(states.size() == 4);
    CHECK(ups > 0);
    CHECK(downs > 0);
}

TEST_CASE("paths are reproducible") {
    const auto layout = layout_of("saturating");
    const MarketState start{100.0, State(2), 0.0};
    const Path a = simulate_controlled_path(layout, Policy::random(0.5, 9), 0.3, start, {0.0, 0}, 0.0, 3.0, 77);
    const Path b = simulate_controlled_path(layout, Policy::random(0.5, 9), 0.3, start, {0.0, 0}, 0.0, 3.0, 77);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t k = 0; k < a.events.size(); ++k) {
        CHECK(a.events[k].time == b.events[k].time);
        CHECK(a.events[k].post.p == b.events[k].post.p);
        CHECK(a.events[k].agent_post.x == b.events[k].agent_post.x);
    }

    auto terminal = [&](Execution mode) {
        return run_ensemble<double>(2000, mode, [&](std::size_t k) {
            Stream rng(5, k);
            return simulate_price_path(layout.kernel(), start, 0.0, 1.0, rng).terminal.p;
        });
    };
    const auto par = terminal(Execution::Parallel);
    const auto ser = terminal(Execution::Serial);
    CHECK(par == ser);
    CHECK(summarize(par).mean == summarize(ser).mean);
}

TEST_CASE("renewal and thinning agree in law") {
    const auto layout = layout_of("saturating");
    const MarketState start{100.0, State(3), 0.2};
    const std::size_t n = 10000;
    std::vector<double> jr(n), jt(n), pr(n), pt(n), hr, ht;
    for (std::size_t k = 0; k < n; ++k) {
        Stream a(21, k), b(22, k);
        const Path r = simulate_price_path(layout.kernel(), start, 0.0, 1.0, a);
        const Path t = simulate_price_path_thinning(layout, start, 0.0, 1.0, b);
        jr[k] = static_cast<double>(r.big_jumps);
        jt[k] = static_cast<double>(t.big_jumps);
        pr[k] = r.terminal.p;
        pt[k] = t.terminal.p;
        for (const auto& ev : r.events) hr.push_back(ev.pre.s);
        for (const auto& ev : t.events) ht.push_back(ev.pre.s);
    }
    CHECK(ks_two_sample(jr, jt).p_value > 0.01);
    CHECK(ks_two_sample(pr, pt).p_value > 0.01);
    CHECK(ks_two_sample(hr, ht).p_value > 0.01);
}
