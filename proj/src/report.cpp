#include "spqn/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace spqn {

std::string format_sig(double x, int sig) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", sig, x);
  return buf;
}

double round_sig(double x, int sig) {
  return std::strtod(format_sig(x, sig).c_str(), nullptr);
}

namespace {

std::string slot_kind_name(const MeasurementSlot& slot) {
  return slot.kind == SlotKind::OnOff ? "OnOff" : "HD";
}

std::string party_slots(const Scenario& sc, int first) {
  return slot_kind_name(sc.slots[first]) + "+" + slot_kind_name(sc.slots[first + 1]);
}

struct Table1Spec {
  const char* row_id;
  const char* scenario;
  Variant variant;
  double reference_s;
  bool violating;
};

const Table1Spec kTable1[] = {
    {"4h", "4h", Variant::DisplacementOnly, 2.0, false},
    {"3h", "3h", Variant::SqueezedDisplaced, 2.0, false},
    {"2h-i-do", "2h-i", Variant::DisplacementOnly, 2.0, false},
    {"2h-i-sdo", "2h-i", Variant::SqueezedDisplaced, 2.126, true},
    {"2h-ii-do", "2h-ii", Variant::DisplacementOnly, 2.166, true},
    {"2h-ii-sdo", "2h-ii", Variant::SqueezedDisplaced, 2.231, true},
    {"1h-do", "1h", Variant::DisplacementOnly, 2.543, true},
    {"1h-sdo", "1h", Variant::SqueezedDisplaced, 2.557, true},
    {"0h-do", "0h", Variant::DisplacementOnly, 2.688, true},
    {"0h-sdo", "0h", Variant::SqueezedDisplaced, 2.782, true},
};

}  // namespace

std::vector<Table1Row> run_table1(const OptimizerConfig& config) {
  std::vector<Table1Row> rows;
  for (const Table1Spec& spec : kTable1) {
    Table1Row row;
    row.row_id = spec.row_id;
    row.scenario = make_scenario(spec.scenario, spec.variant);
    row.alice_slots = party_slots(row.scenario, 0);
    row.bob_slots = party_slots(row.scenario, 2);
    row.variant = to_string(spec.variant);
    row.reference_s = spec.reference_s;
    row.violating = spec.violating;
    const OptimizationResult r = optimize_scenario(row.scenario, 1.0, 1.0, config);
    row.s_max = r.best_s;
    row.best_params = r.best_params;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << "row_id,alice_slots,bob_slots,variant,S_max,paper_S\n";
  for (const Table1Row& row : rows) {
    out << row.row_id << ',' << row.alice_slots << ',' << row.bob_slots << ','
        << row.variant << ',' << format_sig(row.s_max) << ','
        << format_sig(row.reference_s) << '\n';
  }
  return out.str();
}

nlohmann::ordered_json params_to_json(const Scenario& scenario,
                                      const ParamVector& params) {
  const auto layout = param_layout(scenario);
  if (params.size() != layout.size())
    throw std::invalid_argument("params_to_json: layout mismatch");
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const std::string& label = layout[i].label;
    const auto dot = label.find('.');
    j[label.substr(0, dot)][label.substr(dot + 1)] = round_sig(params[i]);
  }
  return j;
}

ParamVector params_from_json(const Scenario& scenario, const nlohmann::json& j) {
  const auto layout = param_layout(scenario);
  ParamVector params;
  params.reserve(layout.size());
  std::size_t seen = 0;
  for (const auto& coord : layout) {
    const auto dot = coord.label.find('.');
    const std::string slot = coord.label.substr(0, dot);
    const std::string field = coord.label.substr(dot + 1);
    if (!j.contains(slot) || !j[slot].contains(field) ||
        !j[slot][field].is_number())
      throw std::invalid_argument("params_from_json: missing parameter " +
                                  coord.label);
    params.push_back(j[slot][field].get<double>());
    ++seen;
  }
  std::size_t present = 0;
  for (const auto& [slot, fields] : j.items()) {
    if (!fields.is_object())
      throw std::invalid_argument("params_from_json: slot " + slot +
                                  " is not an object");
    present += fields.size();
  }
  if (present != seen)
    throw std::invalid_argument("params_from_json: layout mismatch");
  return params;
}

nlohmann::ordered_json optimize_result_json(const Scenario& scenario,
                                            double eta, double p,
                                            const OptimizationResult& result) {
  nlohmann::ordered_json j;
  j["scenario"] = scenario.name;
  j["variant"] = to_string(scenario.variant);
  j["eta"] = round_sig(eta);
  j["p"] = round_sig(p);
  j["seed"] = result.seed;
  j["cutoff"] = result.cutoff;
  j["best_S"] = round_sig(result.best_s);
  j["best_params"] = params_to_json(scenario, result.best_params);

  double worst = result.best_s;
  double sum = 0.0;
  int failed = 0;
  int above_2 = 0;
  int ok = 0;
  for (double s : result.per_restart_s) {
    if (std::isnan(s)) {
      ++failed;
      continue;
    }
    ++ok;
    sum += s;
    worst = std::min(worst, s);
    if (s > 2.0) ++above_2;
  }
  nlohmann::ordered_json summary;
  summary["count"] = result.per_restart_s.size();
  summary["failed"] = failed;
  summary["best"] = round_sig(result.best_s);
  summary["worst"] = round_sig(worst);
  summary["mean"] = round_sig(ok > 0 ? sum / ok : 0.0);
  summary["above_2"] = above_2;
  j["per_restart_summary"] = summary;
  return j;
}

std::string sweep_csv(const SweepGrid& grid) {
  std::ostringstream out;
  out << "eta,p,s_max";
  for (const auto& coord : param_layout(grid.scenario)) out << ',' << coord.label;
  out << '\n';
  for (std::size_t i = 0; i < grid.eta_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.p_axis.size(); ++j) {
      out << format_sig(grid.eta_axis[i]) << ',' << format_sig(grid.p_axis[j])
          << ',' << format_sig(grid.values[i][j]);
      for (double v : grid.params[i][j]) out << ',' << format_sig(v);
      out << '\n';
    }
  }
  return out.str();
}

nlohmann::ordered_json threshold_json(const Threshold& threshold) {
  nlohmann::ordered_json j;
  j["axis"] = threshold.axis;
  j["threshold"] = round_sig(threshold.value);
  j["bracket"] = {round_sig(threshold.lo), round_sig(threshold.hi)};
  nlohmann::ordered_json evidence = nlohmann::ordered_json::array();
  for (const ThresholdPoint& pt : threshold.evidence) {
    nlohmann::ordered_json e;
    e["value"] = round_sig(pt.value);
    e["s"] = round_sig(pt.s);
    evidence.push_back(std::move(e));
  }
  j["evidence"] = std::move(evidence);
  return j;
}

}  // namespace spqn
