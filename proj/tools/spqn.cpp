#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "spqn/report.hpp"

namespace {

using namespace spqn;

int write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return 1;
  }
  file << content;
  return file.good() ? 0 : 1;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw std::invalid_argument("grid steps must be >= 1");
  if (steps == 1) return {hi};
  std::vector<double> axis(steps);
  for (int i = 0; i < steps; ++i)
    axis[i] = lo + (hi - lo) * i / (steps - 1);
  return axis;
}

struct CommonOpts {
  std::string scenario = "0h";
  std::string variant = "sdo";
  double eta = 1.0;
  double p = 1.0;
  int restarts = 200;
  std::uint64_t seed = 1;
  int cutoff = 0;
  std::string out;
  std::string format;
};

OptimizerConfig make_config(const CommonOpts& o) {
  OptimizerConfig cfg;
  cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  cfg.cutoff = o.cutoff;
  return cfg;
}

void check_point(double eta, double p) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("eta must be in (0, 1]");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p must be in [0, 1]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CHSH correlation of a single-photon path-entangled state under "
               "Gaussian-assisted on-off and binned homodyne detection"};
  app.require_subcommand(1);

  CommonOpts o;
  struct {
    double eta_min = 0.7, eta_max = 1.0;
    int eta_steps = 7;
    double p_min = 0.7, p_max = 1.0;
    int p_steps = 7;
    int warm_restarts = 50;
  } g;
  std::string axis = "eta";
  std::string params_path;

  auto add_common = [&](CLI::App* cmd, bool with_point) {
    cmd->add_option("--restarts", o.restarts, "random restarts per optimization");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--cutoff", o.cutoff, "Fock cutoff (0 = automatic)");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    if (with_point) {
      cmd->add_option("--scenario", o.scenario, "scenario name (4h, 3h, 2h-i, 2h-ii, 1h, 0h)");
      cmd->add_option("--variant", o.variant, "do, sdo or squeeze-only");
      cmd->add_option("--eta", o.eta, "on-off detection efficiency in (0, 1]");
      cmd->add_option("--p", o.p, "source efficiency in [0, 1]");
    }
  };

  CLI::App* table1 = app.add_subcommand(
      "table1", "optimize all ten catalog rows at eta = p = 1 and write a CSV");
  add_common(table1, false);

  CLI::App* optimize = app.add_subcommand(
      "optimize", "maximize S for one scenario and write the result as JSON");
  add_common(optimize, true);

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "maximize S over an (eta, p) grid and write a CSV");
  add_common(sweep_cmd, true);
  sweep_cmd->add_option("--eta-min", g.eta_min);
  sweep_cmd->add_option("--eta-max", g.eta_max);
  sweep_cmd->add_option("--eta-steps", g.eta_steps);
  sweep_cmd->add_option("--p-min", g.p_min);
  sweep_cmd->add_option("--p-max", g.p_max);
  sweep_cmd->add_option("--p-steps", g.p_steps);
  sweep_cmd->add_option("--warm-restarts", g.warm_restarts,
                        "fresh restarts per warm-started grid point");

  CLI::App* threshold = app.add_subcommand(
      "threshold", "locate the S = 2 crossing on one axis (other axis = 1)");
  add_common(threshold, true);
  threshold->add_option("--axis", axis, "eta or p");
  threshold->add_option("--warm-restarts", g.warm_restarts,
                        "fresh restarts per warm-started probe");

  CLI::App* eval = app.add_subcommand(
      "eval", "evaluate S at a fixed parameter file (structured JSON)");
  add_common(eval, true);
  eval->add_option("--params", params_path, "parameter file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (table1->parsed()) {
      return write_output(table1_csv(run_table1(make_config(o))), o.out);
    }
    if (optimize->parsed()) {
      check_point(o.eta, o.p);
      const Scenario sc = make_scenario(o.scenario, variant_from_name(o.variant));
      const OptimizationResult r = optimize_scenario(sc, o.eta, o.p, make_config(o));
      return write_output(optimize_result_json(sc, o.eta, o.p, r).dump(2) + "\n",
                          o.out);
    }
    if (sweep_cmd->parsed()) {
      const Scenario sc = make_scenario(o.scenario, variant_from_name(o.variant));
      SweepConfig cfg{make_config(o), g.warm_restarts};
      const SweepGrid grid = sweep(sc, linspace(g.eta_min, g.eta_max, g.eta_steps),
                                   linspace(g.p_min, g.p_max, g.p_steps), cfg);
      return write_output(sweep_csv(grid), o.out);
    }
    if (threshold->parsed()) {
      const Scenario sc = make_scenario(o.scenario, variant_from_name(o.variant));
      SweepConfig cfg{make_config(o), g.warm_restarts};
      const Threshold t = find_threshold(sc, axis, cfg);
      return write_output(threshold_json(t).dump(2) + "\n", o.out);
    }
    if (eval->parsed()) {
      check_point(o.eta, o.p);
      const Scenario sc = make_scenario(o.scenario, variant_from_name(o.variant));
      std::ifstream file(params_path);
      if (!file) {
        std::cerr << "error: cannot read " << params_path << "\n";
        return 1;
      }
      nlohmann::json j;
      file >> j;
      const ParamVector params = params_from_json(sc, j);
      const int cutoff = o.cutoff > 0 ? o.cutoff
                                      : (sc.has_onoff() ? converged_onoff_cutoff(o.eta) : 40);
      const double s = scenario_evaluate(sc, params, o.eta, o.p, cutoff);
      return write_output(format_sig(s, 10) + "\n", o.out);
    }
  } catch (const NoViolationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
