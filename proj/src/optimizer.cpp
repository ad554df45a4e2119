#include "spqn/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace spqn {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// splitmix64; used instead of <random> engines/distributions so that
/// seeded streams are identical across standard libraries.
struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() { return mix64(state += kGolden); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

ParamVector project(ParamVector v, const std::vector<CoordSpec>& bounds) {
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::clamp(v[i], bounds[i].lo, bounds[i].hi);
  return v;
}

}  // namespace

std::vector<std::uint64_t> restart_seeds(std::uint64_t seed, int restarts) {
  std::vector<std::uint64_t> seeds(restarts);
  for (int i = 0; i < restarts; ++i)
    seeds[i] = mix64(seed + static_cast<std::uint64_t>(i + 1) * kGolden);
  return seeds;
}

int worker_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPQN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::pair<ParamVector, double> local_refine(const Objective& objective,
                                            ParamVector start,
                                            const std::vector<CoordSpec>& bounds,
                                            double tol, int max_iter) {
  const int n = static_cast<int>(start.size());
  if (static_cast<int>(bounds.size()) != n)
    throw std::invalid_argument("local_refine: bounds/start size mismatch");
  start = project(std::move(start), bounds);
  if (n == 0) return {start, objective(start)};

  // Nelder-Mead on -f with trial points projected onto the bound box.
  std::vector<ParamVector> simplex(n + 1, start);
  for (int i = 0; i < n; ++i) {
    double h = 0.1 * (bounds[i].hi - bounds[i].lo);
    if (start[i] + h > bounds[i].hi) h = -h;
    simplex[i + 1][i] = std::clamp(start[i] + h, bounds[i].lo, bounds[i].hi);
  }
  std::vector<double> f(n + 1);
  for (int i = 0; i <= n; ++i) f[i] = objective(simplex[i]);

  std::vector<int> order(n + 1);
  ParamVector centroid(n), trial(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return f[a] > f[b]; });
    const int best = order[0];
    const int worst = order[n];
    const int second_worst = order[n - 1];
    if (f[best] - f[worst] < tol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int d = 0; d < n; ++d) centroid[d] += simplex[i][d];
    }
    for (int d = 0; d < n; ++d) centroid[d] /= n;

    auto make_trial = [&](double coeff) {
      for (int d = 0; d < n; ++d)
        trial[d] = std::clamp(centroid[d] + coeff * (centroid[d] - simplex[worst][d]),
                              bounds[d].lo, bounds[d].hi);
    };

    make_trial(1.0);  // reflection
    const double fr = objective(trial);
    if (fr > f[best]) {
      ParamVector reflected = trial;
      make_trial(2.0);  // expansion
      const double fe = objective(trial);
      if (fe > fr) {
        simplex[worst] = trial;
        f[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        f[worst] = fr;
      }
      continue;
    }
    if (fr > f[second_worst]) {
      simplex[worst] = trial;
      f[worst] = fr;
      continue;
    }
    if (fr > f[worst]) {
      make_trial(0.5);  // outside contraction
      const double fc = objective(trial);
      if (fc >= fr) {
        simplex[worst] = trial;
        f[worst] = fc;
        continue;
      }
    } else {
      make_trial(-0.5);  // inside contraction
      const double fc = objective(trial);
      if (fc > f[worst]) {
        simplex[worst] = trial;
        f[worst] = fc;
        continue;
      }
    }
    for (int i = 0; i <= n; ++i) {  // shrink toward the best vertex
      if (i == best) continue;
      for (int d = 0; d < n; ++d)
        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
      f[i] = objective(simplex[i]);
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (f[i] > f[best]) best = i;
  return {simplex[best], f[best]};
}

namespace {

struct SlotStart {
  GaussianParams gauss;
  HomodyneBin bin;
};

/// Candidate starts for one catalog entry under a discrete set of sign,
/// phase and quadrature-scale relabelings; the caller screens them by value.
void append_variants(const Scenario& scenario,
                     const std::array<SlotSetting, 4>& base,
                     std::vector<ParamVector>& out) {
  const bool any_xi = std::any_of(base.begin(), base.end(), [](const auto& s) {
    return s.kind == SlotKind::OnOff && s.gauss.xi != Complex{};
  });
  const bool any_hom = std::any_of(base.begin(), base.end(), [](const auto& s) {
    return s.kind == SlotKind::Homodyne;
  });
  const std::array<double, 2> xi_signs = {1.0, -1.0};
  const std::array<bool, 2> conj_alpha = {false, true};
  const std::array<double, 4> theta_maps = {0.0, 1.0, 2.0, 3.0};
  const std::array<double, 3> scales = {1.0, std::sqrt(2.0), 1.0 / std::sqrt(2.0)};

  for (double xs : xi_signs) {
    if (xs < 0.0 && !any_xi) continue;
    for (bool ca : conj_alpha) {
      for (double tm : theta_maps) {
        if (tm > 0.0 && !any_hom) continue;
        for (double sc : scales) {
          if (sc != 1.0 && !any_hom) continue;
          std::array<SlotSetting, 4> v = base;
          for (auto& s : v) {
            if (s.kind == SlotKind::OnOff) {
              s.gauss.xi *= xs;
              if (ca) s.gauss.alpha = std::conj(s.gauss.alpha);
            } else {
              double th = s.bin.theta;
              if (tm == 1.0) th = -th;
              else if (tm == 2.0) th = -th - M_PI;
              else if (tm == 3.0) th = th + M_PI;
              if (th > M_PI) th -= 2.0 * M_PI;
              if (th < -M_PI) th += 2.0 * M_PI;
              s.bin.theta = th;
              s.bin.center *= sc;
              s.bin.width *= sc;
            }
          }
          out.push_back(pack_params(scenario, v));
        }
      }
    }
  }
}

SlotSetting onoff_start(Complex alpha, Complex xi, const Scenario& sc, int slot) {
  SlotSetting s;
  s.kind = SlotKind::OnOff;
  if (sc.slots[slot].allow_displacement) s.gauss.alpha = alpha;
  if (sc.slots[slot].allow_squeezing) s.gauss.xi = xi;
  return s;
}

SlotSetting homodyne_start(double z1, double z2, double theta) {
  SlotSetting s;
  s.kind = SlotKind::Homodyne;
  s.bin = {theta, 0.5 * (z1 + z2), z2 - z1};
  return s;
}

Complex polar(double r, double phi) { return r * std::exp(Complex{0.0, phi}); }

}  // namespace

std::vector<ParamVector> curated_starts(const Scenario& sc) {
  std::vector<ParamVector> out;
  if (sc.variant == Variant::SqueezeOnly) return out;
  const bool sq = sc.variant == Variant::SqueezedDisplaced;
  if (sc.name == "2h-i") {
    append_variants(sc,
                    {onoff_start({-0.815, -0.171}, polar(-0.332, 0.413), sc, 0),
                     onoff_start({-0.155, 0.818}, polar(0.332, 0.374), sc, 1),
                     homodyne_start(-0.139, 5.237, -0.589),
                     homodyne_start(0.0, 8.256, 0.982)},
                    out);
  } else if (sc.name == "2h-ii") {
    append_variants(sc,
                    {onoff_start({0.264, 0.578}, polar(0.24, -0.858), sc, 0),
                     homodyne_start(-11.7, 0.143, -0.55),
                     onoff_start({0.153, -0.617}, polar(0.24, 0.486), sc, 2),
                     homodyne_start(0.143, 9.7, 0.363)},
                    out);
  } else if (sc.name == "1h") {
    append_variants(sc,
                    {onoff_start({0.0, 0.0}, {0.0, 0.0}, sc, 0),
                     homodyne_start(-11.5, 0.0, -0.146),
                     onoff_start({-0.344, 0.051}, polar(-0.099, -0.293), sc, 2),
                     onoff_start({0.344, -0.151}, polar(-0.099, -0.293), sc, 3)},
                    out);
  } else if (sc.name == "0h") {
    if (sq) {
      append_variants(sc,
                      {onoff_start({0.0, 0.186}, {0.032, 0.0}, sc, 0),
                       onoff_start({0.0, -0.642}, {0.243, 0.0}, sc, 1),
                       onoff_start({0.0, 0.186}, {0.032, 0.0}, sc, 2),
                       onoff_start({0.0, -0.642}, {0.243, 0.0}, sc, 3)},
                      out);
    }
    append_variants(sc,
                    {onoff_start(polar(0.165, -3.395), {}, sc, 0),
                     onoff_start(polar(0.563, -0.253), {}, sc, 1),
                     onoff_start(polar(0.165, 2.888), {}, sc, 2),
                     onoff_start(polar(0.563, -0.253), {}, sc, 3)},
                    out);
  }
  return out;
}

OptimizationResult optimize_scenario(const Scenario& scenario, double eta,
                                     double p, const OptimizerConfig& config) {
  if (config.restarts < 1)
    throw std::invalid_argument("optimize_scenario: restarts must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  const int cutoff = config.cutoff > 0
                         ? config.cutoff
                         : (scenario.has_onoff() ? converged_onoff_cutoff(eta) : 40);
  const std::vector<CoordSpec> bounds = param_layout(scenario);
  const int n = static_cast<int>(bounds.size());

  const auto objective = [&](const ParamVector& v) {
    return scenario_evaluate(scenario, v, eta, p, cutoff);
  };

  // Random restarts first, then deterministic extras: the all-zeros start,
  // the screened curated starts, and any caller-supplied warm starts.
  std::vector<ParamVector> starts;
  starts.reserve(config.restarts + 16);
  const auto seeds = restart_seeds(config.seed, config.restarts);
  for (int i = 0; i < config.restarts; ++i) {
    SplitMix rng{seeds[i]};
    ParamVector v(n);
    for (int d = 0; d < n; ++d) v[d] = rng.uniform(bounds[d].lo, bounds[d].hi);
    starts.push_back(std::move(v));
  }
  starts.push_back(project(ParamVector(n, 0.0), bounds));
  if (config.curated_starts) {
    std::vector<std::pair<double, std::size_t>> screened;
    auto candidates = curated_starts(scenario);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      candidates[i] = project(std::move(candidates[i]), bounds);
      screened.emplace_back(-objective(candidates[i]), i);
    }
    std::sort(screened.begin(), screened.end());
    const std::size_t keep = std::min<std::size_t>(8, screened.size());
    for (std::size_t i = 0; i < keep; ++i)
      starts.push_back(candidates[screened[i].second]);
  }
  for (const auto& extra : config.extra_starts) {
    if (static_cast<int>(extra.size()) != n)
      throw std::invalid_argument("optimize_scenario: extra start layout mismatch");
    starts.push_back(project(extra, bounds));
  }

  const std::size_t total = starts.size();
  std::vector<double> values(total, std::numeric_limits<double>::quiet_NaN());
  std::vector<ParamVector> points(total);

  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= total) return;
      try {
        auto [point, value] = local_refine(objective, starts[i], bounds,
                                           config.tol, config.max_iter);
        points[i] = std::move(point);
        values[i] = value;
      } catch (const std::exception&) {
        // recorded as NaN and skipped
      }
    }
  };
  const int nthreads = std::min<int>(worker_threads(config.threads),
                                     static_cast<int>(total));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  OptimizationResult result;
  result.per_restart_s = values;
  result.seed = config.seed;
  result.cutoff = cutoff;
  std::size_t best = total;
  for (std::size_t i = 0; i < total; ++i) {
    if (std::isnan(values[i])) continue;
    if (best == total || values[i] > values[best]) best = i;
  }
  if (best == total)
    throw std::runtime_error("optimize_scenario: every restart failed");
  result.best_s = values[best];
  result.best_params = points[best];
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace spqn
