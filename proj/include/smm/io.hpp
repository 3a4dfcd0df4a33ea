#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "smm/backtest.hpp"
#include "smm/market_maker.hpp"
#include "smm/simulator.hpp"
#include "smm/value_field.hpp"

namespace smm {

// Reproducibility stamp carried by every output file.
struct RunStamp {
    std::string config_hash;
    std::uint64_t seed = 0;
};

std::string csv_header(const RunStamp& stamp);

// One row per event: path, time, kind, j_or_nu, k, p_pre, p_post, s_pre,
// x_post, y_post, l_plus, l_minus.
void write_paths_csv(const std::string& file, const std::vector<Path>& paths, const RunStamp& stamp);
nlohmann::json paths_summary(const std::vector<Path>& paths);

void write_json(const std::string& file, nlohmann::json doc, const RunStamp& stamp);

// Age-0 core as (t, p, i, s, value) rows plus a grid line, enough to rebuild
// the whole field with extend_to_age.
void write_core_csv(const std::string& file, const ValueField& field, const RunStamp& stamp);
// Throws DependencyError if the file is missing or belongs to another grid.
std::vector<double> read_core_csv(const std::string& file, const Grid& grid);

// (t, p, i, s, value) on every stride-th time row and age of the wedge
// (the last row is always written).
void write_field_csv(const std::string& file, const ValueField& field, int stride, const RunStamp& stamp);

// (t, p, i, s, m_plus, m_minus, l_plus, l_minus) on the same subgrid.
void write_policy_csv(const std::string& file, const DecisionField& field, int stride, const RunStamp& stamp);

void write_backtest_csv(const std::string& file, const std::vector<BacktestRow>& rows, const RunStamp& stamp);

}  // namespace smm
