#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "smm/kernel.hpp"
#include "smm/mark_layout.hpp"
#include "smm/policy.hpp"
#include "smm/rng.hpp"

namespace smm {

struct MarketState {
    double p = 1.0;  // mid-price
    State i{1};
    double s = 0.0;  // age since the last price move
};

struct AgentState {
    double x = 0.0;   // cash
    long long y = 0;  // inventory in units
};

struct JumpEvent {
    double time = 0.0;
    MarkEvent::Kind kind = MarkEvent::Kind::BigJump;
    State target{1};        // BigJump
    Side side = Side::Plus; // book side involved
    int size = 0;           // SmallOrder size k (K for big orders)
    long long executed = 0; // units the agent traded, signed like dy
    double price_at_execution = 0.0;
    MarketState pre, post;
    AgentState agent_pre, agent_post;
    Control control;
};

struct Path {
    double t0 = 0.0;
    double horizon = 0.0;
    MarketState initial, terminal;
    AgentState agent_initial, agent_terminal;
    std::vector<JumpEvent> events;
    std::size_t big_jumps = 0;
    std::size_t small_orders = 0;
    std::size_t proposals = 0;  // thinning only: candidate points
    std::size_t accepted = 0;   // thinning only: candidates inside the mark mass
};

// Holding time w > 0 of a holding interval that has already lasted s0,
// solving (F(s0 + w) - F(s0)) / (1 - F(s0)) = u. Throws DomainError unless
// 0 < u < 1.
double sample_holding(const SemiMarkovKernel& kernel, double s0, double u);

// Successor of i after a holding time y; the cell of u in the cumulative
// weights of successors(i), smaller j first.
State sample_transition(const SemiMarkovKernel& kernel, State i, double y, double u);

// Renewal construction on [t0, T]: holding time, transition, repeat.
Path simulate_price_path(const SemiMarkovKernel& kernel, const MarketState& start, double t0, double T,
                         Stream& rng);
Path simulate_price_path(const SemiMarkovKernel& kernel, const MarketState& start, double t0, double T,
                         std::uint64_t seed);

// Same law through the Poisson random measure: candidate points at rate
// mark_bound() with uniform marks, resolved by MarkLayout::classify. Only the
// big jumps are stored as events, small orders are counted.
Path simulate_price_path_thinning(const MarkLayout& layout, const MarketState& start, double t0, double T,
                                  Stream& rng);
Path simulate_price_path_thinning(const MarkLayout& layout, const MarketState& start, double t0, double T,
                                  std::uint64_t seed);

// Portfolio change (dx, dy) of one event at pre-event price p for control l.
std::pair<double, long long> execution_change(const MarkEvent& ev, const Control& l, double p, double delta,
                                              int K, double epsilon);

// Controlled quintuple (P, I, S, X, Y) by thinning; the policy is read at the
// left limit of every event.
Path simulate_controlled_path(const MarkLayout& layout, const Policy& policy, double epsilon,
                              const MarketState& start, const AgentState& agent, double t0, double T, Stream& rng);
Path simulate_controlled_path(const MarkLayout& layout, const Policy& policy, double epsilon,
                              const MarketState& start, const AgentState& agent, double t0, double T,
                              std::uint64_t seed);

}  // namespace smm
