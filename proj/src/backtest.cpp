#include "smm/backtest.hpp"

#include "smm/errors.hpp"

namespace smm {

std::vector<BacktestRow> backtest(const std::vector<Policy>& policies, const MarkLayout& layout,
                                  const MarketMakingSpec& spec, const BacktestSetup& setup) {
    if (setup.n_paths < 1) throw std::invalid_argument("backtest needs at least one path");
    std::vector<BacktestRow> rows;
    const double bound = wealth_bound(spec, layout, setup.t0, setup.start.p, setup.agent.x,
                                  static_cast<double>(setup.agent.y), setup.T)
                            .value;
    for (const Policy& policy : policies) {
        auto sample = run_ensemble<std::pair<double, double>>(setup.n_paths, setup.mode, [&](std::size_t k) {
            Stream rng(setup.seed, k);
            const Path path = simulate_controlled_path(layout, policy, spec.epsilon, setup.start, setup.agent,
                                                       setup.t0, setup.T, rng);
            const double y = static_cast<double>(path.agent_terminal.y);
            const double wealth = path.agent_terminal.x + path.terminal.p * y;
            return std::make_pair(wealth - spec.eta * y * y, wealth);
        });
        std::vector<double> util(sample.size()), wealth(sample.size());
        for (std::size_t k = 0; k < sample.size(); ++k) {
            util[k] = sample[k].first;
            wealth[k] = sample[k].second;
        }
        rows.push_back({policy.name(), summarize(util, setup.seed), summarize(wealth, setup.seed), bound});
    }
    return rows;
}

std::vector<Policy> baseline_policies(std::uint64_t seed) {
    return {Policy::hold(), Policy::always_quote(), Policy::ask_only(), Policy::bid_only(),
            Policy::random(0.5, seed)};
}

}  // namespace smm
