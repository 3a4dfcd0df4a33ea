#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smm/grid.hpp"
#include "smm/hazard.hpp"
#include "smm/kernel.hpp"
#include "smm/mark_layout.hpp"
#include "smm/market_maker.hpp"
#include "smm/simulator.hpp"

namespace smm {

// Everything an experiment needs. Missing keys take the values below.
struct ExperimentConfig {
    std::string name = "unnamed";

    HazardSpec h_plus = HazardSpec::constant(0.75);
    HazardSpec h_minus = HazardSpec::constant(0.75);
    double delta = 0.01;

    HazardSpec lambda_plus = HazardSpec::constant(1.0);
    HazardSpec lambda_minus = HazardSpec::constant(1.0);
    std::vector<double> theta_plus{0.2, 0.5, 0.3};
    std::vector<double> theta_minus{0.2, 0.5, 0.3};
    int K = 2;
    double epsilon = 0.3;

    double T = 1.0;
    double p0 = 100.0;
    int i0 = 2;
    double s0 = 0.0;
    double x0 = 0.0;
    long long y0 = 0;

    GridSpec grid;

    std::size_t n_paths = 10000;
    std::uint64_t seed = 42;
    std::string out_dir = "out";

    bool portfolio_consistent_mj = false;
    double eta = 0.0;

    std::string hash;    // FNV-1a of the normalised input, hex
    std::string origin;  // file name or "<string>"

    SemiMarkovKernel kernel() const;
    MarkLayout layout() const;
    MarketMakingSpec market_making() const;
    MarketState start() const { return {p0, State(i0), s0}; }
    AgentState agent() const { return {x0, y0}; }
    Grid make_grid() const;
};

// Parses and validates; throws ConfigError listing every problem, each
// prefixed with origin:line.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");
ExperimentConfig load_config(const std::string& path);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace smm
