#pragma once

#include <json.hpp>

#include "spqn/robustness.hpp"

namespace spqn {

/// %.12g formatting used for every number that leaves the process; keeps
/// seeded reruns byte-identical and warm-start round-trips lossless at
/// tolerance.
std::string format_sig(double x, int sig = 12);
double round_sig(double x, int sig = 12);

struct Table1Row {
  std::string row_id;
  std::string alice_slots;
  std::string bob_slots;
  std::string variant;
  double s_max;
  double reference_s;  // published maximum; 2 stands for "no violation"
  bool violating;
  Scenario scenario;
  ParamVector best_params;
};

/// The ten catalog rows at eta = p = 1, in fixed order.
std::vector<Table1Row> run_table1(const OptimizerConfig& config);
std::string table1_csv(const std::vector<Table1Row>& rows);

/// Structured parameter record, one JSON object per slot (A1, A2, B1, B2).
nlohmann::ordered_json params_to_json(const Scenario& scenario,
                                      const ParamVector& params);
ParamVector params_from_json(const Scenario& scenario,
                             const nlohmann::json& j);

nlohmann::ordered_json optimize_result_json(const Scenario& scenario,
                                            double eta, double p,
                                            const OptimizationResult& result);

/// CSV columns: eta, p, s_max, then the flattened labeled parameters.
std::string sweep_csv(const SweepGrid& grid);

nlohmann::ordered_json threshold_json(const Threshold& threshold);

}  // namespace spqn
