#pragma once

#include "spqn/errors.hpp"
#include "spqn/optimizer.hpp"

namespace spqn {

struct SweepConfig {
  OptimizerConfig base{};
  /// Fresh random restarts per grid/bisection point after the first
  /// (warm starts from already-solved neighbors are always added).
  int warm_restarts = 50;
};

/// Rectangular (eta, p) grid of maximized S values with the warm-start
/// lineage that produced them.
struct SweepGrid {
  Scenario scenario;
  std::vector<double> eta_axis;
  std::vector<double> p_axis;
  std::vector<std::vector<double>> values;       // [i_eta][j_p]
  std::vector<std::vector<ParamVector>> params;  // [i_eta][j_p]
  SweepConfig config;
};

/// Maximizes S at every grid point, traversing from the most efficient
/// corner outward so each point is warm-started by solved neighbors.
SweepGrid sweep(const Scenario& scenario, std::vector<double> eta_axis,
                std::vector<double> p_axis, const SweepConfig& config);

struct ThresholdPoint {
  double value;
  double s;
};

/// Marginal S = 2 crossing on one efficiency axis, the other axis held at 1.
struct Threshold {
  std::string axis;  // "eta" or "p"
  double value;
  double lo;
  double hi;
  std::vector<ThresholdPoint> evidence;
};

/// Bisects the chosen axis until the bracket width is <= 0.005; every probe
/// is a warm-started optimization. Throws NoViolationError if S(1,1) <= 2.
Threshold find_threshold(const Scenario& scenario, const std::string& axis,
                         const SweepConfig& config);

}  // namespace spqn
