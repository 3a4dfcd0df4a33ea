#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "smm/backtest.hpp"
#include "smm/config.hpp"
#include "smm/market_maker.hpp"
#include "smm/value_field.hpp"

namespace smm {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool applicable = true;
    std::string detail;
    nlohmann::json data = nlohmann::json::object();
};

// Sample sizes of the statistical checks.
struct ValidationSizes {
    std::size_t ks_samples = 10000;
    std::size_t mc_paths = 100000;
    std::size_t dynkin_paths = 100000;
    std::size_t backtest_paths = 10000;
    int closed_form_n_t = 400;
    std::vector<int> refinement{100, 200, 400};
};

// pi, decision field and u for one configuration.
struct SolvedModel {
    std::shared_ptr<const Grid> grid;
    std::shared_ptr<const ValueField> pi;
    std::shared_ptr<const DecisionField> decision;
    std::shared_ptr<const ValueField> u;
};
SolvedModel solve_model(const ExperimentConfig& cfg, bool with_u = true);

CheckResult check_kernel_identities(const ExperimentConfig& cfg);
CheckResult check_distributions(const ExperimentConfig& cfg, const ValidationSizes& sizes);
// pi = p for equal constant hazards, the matrix exponential for constant ones;
// not applicable otherwise.
CheckResult check_closed_forms(const ExperimentConfig& cfg, const ValidationSizes& sizes);
CheckResult check_contraction(const ExperimentConfig& cfg);
CheckResult check_residual_order(const ExperimentConfig& cfg, const ValidationSizes& sizes);
CheckResult check_stochastic_representation(const ExperimentConfig& cfg, const ValidationSizes& sizes);
CheckResult check_dynkin(const ExperimentConfig& cfg, const ValidationSizes& sizes);

// Backtests of the optimal policy against the baselines over the (delta,
// epsilon) pairs; the rows are returned for the bound check.
CheckResult check_optimality(const ExperimentConfig& cfg, const std::vector<std::pair<double, double>>& sweep,
                             const ValidationSizes& sizes, std::vector<BacktestRow>* rows_out = nullptr);
CheckResult check_wealth_bound(const std::vector<BacktestRow>& rows);
// Raises epsilon to 1.01 delta (max lattice price, or 1 for the verbatim
// decision functions) and checks u and the policy on the grid.
CheckResult check_degenerate(const ExperimentConfig& cfg);

}  // namespace smm
