#pragma once

#include <string>
#include <vector>

#include "smm/ensemble.hpp"
#include "smm/market_maker.hpp"
#include "smm/simulator.hpp"
#include "smm/stats.hpp"

namespace smm {

struct BacktestSetup {
    MarketState start;
    AgentState agent;
    double t0 = 0.0;
    double T = 1.0;
    std::size_t n_paths = 10000;
    std::uint64_t seed = 0;
    Execution mode = Execution::Parallel;
};

struct BacktestRow {
    std::string policy;
    McEstimate utility;  // X_T + P_T Y_T - eta Y_T^2
    McEstimate wealth;   // X_T + P_T Y_T
    double bound = 0.0;  // upper bound on E[X_T + P_T Y_T]
};

// Runs every policy on the same market paths (path k uses stream k of the
// master seed, and the agent does not move the market).
std::vector<BacktestRow> backtest(const std::vector<Policy>& policies, const MarkLayout& layout,
                                  const MarketMakingSpec& spec, const BacktestSetup& setup);

// Hold, AlwaysQuote, AskOnly, BidOnly and Random(0.5).
std::vector<Policy> baseline_policies(std::uint64_t seed);

}  // namespace smm
