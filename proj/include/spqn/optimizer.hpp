#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "spqn/scenario.hpp"

namespace spqn {

struct OptimizerConfig {
  int restarts = 200;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  int max_iter = 2000;
  int cutoff = 0;   // 0 = grow automatically from 40 until cutoff-stable
  int threads = 0;  // 0 = SPQN_THREADS or hardware concurrency
  /// Hand-picked starting points near known optima of the catalog scenarios,
  /// refined in addition to the random restarts.
  bool curated_starts = true;
  /// Caller-supplied warm starts (e.g. a neighboring grid point's optimum).
  std::vector<ParamVector> extra_starts;
};

struct OptimizationResult {
  double best_s = 0.0;
  ParamVector best_params;
  /// One entry per refinement start (random restarts first, then curated and
  /// extra starts); failed restarts are recorded as NaN.
  std::vector<double> per_restart_s;
  std::uint64_t seed = 0;
  int cutoff = 0;
  double wall_seconds = 0.0;
};

/// Per-restart seeds by counter-mode mixing of the master seed; stable
/// across runs, platforms and restart counts.
std::vector<std::uint64_t> restart_seeds(std::uint64_t seed, int restarts);

using Objective = std::function<double(const ParamVector&)>;

/// Derivative-free (Nelder-Mead) maximization inside the bound box; trial
/// points are projected onto the bounds. Returns the best point seen.
std::pair<ParamVector, double> local_refine(const Objective& objective,
                                            ParamVector start,
                                            const std::vector<CoordSpec>& bounds,
                                            double tol, int max_iter);

/// Multistart maximization of S over the scenario's parameter space.
/// Deterministic given (scenario, eta, p, config); restarts run concurrently.
OptimizationResult optimize_scenario(const Scenario& scenario, double eta,
                                     double p, const OptimizerConfig& config);

/// Starting points near the known optima of a catalog scenario, already
/// screened over discrete sign/phase/scale relabelings of the conventions.
std::vector<ParamVector> curated_starts(const Scenario& scenario);

/// Resolves a requested thread count (0 = SPQN_THREADS env var, then
/// hardware concurrency).
int worker_threads(int requested);

}  // namespace spqn
