#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hras/domain.hpp"
#include "hras/evaluation.hpp"
#include "hras/solve.hpp"

// File formats: JSON for structured objects (instances, decisions, solve
// summaries), flat CSV for scenario sets and reports, long-format CSV
// (x, series, y, p20, p80) for plot data.

namespace hras {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json scenarios_to_json(const std::vector<Scenario>& scenarios);
std::vector<Scenario> scenarios_from_json(const nlohmann::json& j);

nlohmann::json decision_to_json(const FirstStageDecision& dec);
FirstStageDecision decision_from_json(const nlohmann::json& j);

// Summary only; variable values stay in the solver's solution file.
nlohmann::json solve_result_to_json(const SolveResult& res);

// One row per scenario: d_1..d_N, then the travel matrix row-major
// (t_0_0..t_N_N, diagonal zeros included). Header row first.
std::string scenarios_to_csv(const std::vector<Scenario>& scenarios);
std::vector<Scenario> scenarios_from_csv(const std::string& text, int N);

// Single-row report; per-position columns are suffixed _1.._N.
std::string report_to_csv(const EvaluationReport& rep);

std::string sweep_to_csv(const std::vector<SweepCell>& table);

struct PlotRow {
  double x = 0.0;
  std::string series;
  double y = 0.0;
  double p20 = 0.0;
  double p80 = 0.0;
};

std::string plot_rows_to_csv(const std::vector<PlotRow>& rows);

}  // namespace hras
