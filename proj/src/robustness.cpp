#include "spqn/robustness.hpp"

#include <algorithm>
#include <cmath>

namespace spqn {

namespace {

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw std::invalid_argument(std::string(name) + " axis is empty");
  for (double v : axis)
    if (!(v > 0.0 && v <= 1.0))
      throw std::invalid_argument(std::string(name) + " axis values must be in (0, 1]");
  if (!std::is_sorted(axis.begin(), axis.end()))
    throw std::invalid_argument(std::string(name) + " axis must be sorted ascending");
}

OptimizerConfig warm_config(const SweepConfig& config,
                            std::vector<ParamVector> extras) {
  OptimizerConfig cfg = config.base;
  cfg.restarts = std::max(1, config.warm_restarts);
  cfg.extra_starts = std::move(extras);
  return cfg;
}

}  // namespace

SweepGrid sweep(const Scenario& scenario, std::vector<double> eta_axis,
                std::vector<double> p_axis, const SweepConfig& config) {
  check_axis(eta_axis, "eta");
  check_axis(p_axis, "p");

  SweepGrid grid;
  grid.scenario = scenario;
  grid.eta_axis = eta_axis;
  grid.p_axis = p_axis;
  grid.config = config;
  const int ne = static_cast<int>(eta_axis.size());
  const int np = static_cast<int>(p_axis.size());
  grid.values.assign(ne, std::vector<double>(np, 0.0));
  grid.params.assign(ne, std::vector<ParamVector>(np));

  // Walk from the most efficient corner outward; each point is warm-started
  // from its already-solved higher-efficiency neighbors.
  for (int i = ne - 1; i >= 0; --i) {
    for (int j = np - 1; j >= 0; --j) {
      const bool first = (i == ne - 1 && j == np - 1);
      std::vector<ParamVector> extras;
      if (i + 1 < ne) extras.push_back(grid.params[i + 1][j]);
      if (j + 1 < np) extras.push_back(grid.params[i][j + 1]);
      const OptimizerConfig cfg =
          first ? config.base : warm_config(config, std::move(extras));
      const OptimizationResult r =
          optimize_scenario(scenario, eta_axis[i], p_axis[j], cfg);
      grid.values[i][j] = r.best_s;
      grid.params[i][j] = r.best_params;
    }
  }
  return grid;
}

Threshold find_threshold(const Scenario& scenario, const std::string& axis,
                         const SweepConfig& config) {
  if (axis != "eta" && axis != "p")
    throw std::invalid_argument("find_threshold: axis must be 'eta' or 'p'");
  const bool on_eta = axis == "eta";

  Threshold result;
  result.axis = axis;

  std::vector<std::pair<double, ParamVector>> solved;  // (axis value, params)
  auto solve_at = [&](double x, bool first) {
    const double eta = on_eta ? x : 1.0;
    const double p = on_eta ? 1.0 : x;
    OptimizationResult r;
    if (first) {
      r = optimize_scenario(scenario, eta, p, config.base);
    } else {
      // warm-start from the nearest solved points on the axis
      std::vector<std::pair<double, ParamVector>> nearest = solved;
      std::sort(nearest.begin(), nearest.end(),
                [&](const auto& a, const auto& b) {
                  return std::abs(a.first - x) < std::abs(b.first - x);
                });
      std::vector<ParamVector> extras;
      for (std::size_t k = 0; k < nearest.size() && k < 2; ++k)
        extras.push_back(nearest[k].second);
      r = optimize_scenario(scenario, eta, p, warm_config(config, std::move(extras)));
    }
    solved.emplace_back(x, r.best_params);
    result.evidence.push_back({x, r.best_s});
    return r.best_s;
  };

  const double s_ideal = solve_at(1.0, true);
  if (s_ideal <= 2.0)
    throw NoViolationError("find_threshold: no violation at eta = p = 1 (S = " +
                           std::to_string(s_ideal) + ")");

  // Coarse scan down the axis for a bracket around S = 2.
  double hi = 1.0;
  double lo = 1.0;
  constexpr double kStep = 0.05;
  constexpr double kFloor = 0.05;
  for (;;) {
    lo = hi - kStep;
    if (lo < kFloor)
      throw std::runtime_error("find_threshold: no S = 2 crossing above " +
                               std::to_string(kFloor));
    if (solve_at(lo, false) <= 2.0) break;
    hi = lo;
  }

  while (hi - lo > 0.005) {
    const double mid = 0.5 * (lo + hi);
    if (solve_at(mid, false) > 2.0)
      hi = mid;
    else
      lo = mid;
  }

  result.value = 0.5 * (lo + hi);
  result.lo = lo;
  result.hi = hi;
  return result;
}

}  // namespace spqn
