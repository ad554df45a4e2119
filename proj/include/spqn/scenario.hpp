#pragma once

#include <array>
#include <string>
#include <vector>

#include "spqn/measurement.hpp"

namespace spqn {

enum class SlotKind { OnOff, Homodyne };

enum class Variant { DisplacementOnly, SqueezedDisplaced, SqueezeOnly };

std::string to_string(Variant v);
Variant variant_from_name(const std::string& name);

struct MeasurementSlot {
  SlotKind kind{SlotKind::OnOff};
  bool allow_displacement{true};
  bool allow_squeezing{false};
};

/// Four measurement slots ordered (A1, A2, B1, B2).
struct Scenario {
  std::string name;
  Variant variant{Variant::DisplacementOnly};
  std::array<MeasurementSlot, 4> slots{};

  bool has_onoff() const;
};

/// Catalog names: 4h, 3h, 2h-i, 2h-ii, 1h, 0h.
const std::vector<std::string>& scenario_names();
Scenario make_scenario(const std::string& name, Variant variant);

/// Two-mode state on {|00>, |01>, |10>, |11>}:
/// rho = p |psi><psi| + (1-p) |00><00|, |psi> = (|10> + |01>)/sqrt(2).
struct SourceState {
  double p{1.0};
  Eigen::Matrix4cd rho;
};

SourceState source_state(double p);

/// E = Tr[rho (A x B)]; the imaginary residue is checked then discarded.
double correlation(const SourceState& state, const LocalObservable& a,
                   const LocalObservable& b);

/// S = |E11 + E12 + E21 - E22|.
double chsh_value(double e11, double e12, double e21, double e22);

using ParamVector = std::vector<double>;

/// One optimization coordinate: label plus closed bounds.
struct CoordSpec {
  std::string label;
  double lo;
  double hi;
};

/// Flat parameter layout of a scenario. Per on-off slot: re_alpha, im_alpha
/// (if displacement allowed) and r, phi_xi (if squeezing allowed). Per
/// homodyne slot: theta, center, width.
std::vector<CoordSpec> param_layout(const Scenario& scenario);
int param_count(const Scenario& scenario);

/// Homodyne slot in (theta, center, width) form; endpoints are derived as
/// center -/+ width/2 and clamped to +-12 only when building the observable,
/// so pack/unpack round-trips are lossless.
struct HomodyneBin {
  double theta{0.0};
  double center{0.0};
  double width{2.0 * kQuadratureClamp};

  HomodyneParams to_params() const;
};

struct SlotSetting {
  SlotKind kind{SlotKind::OnOff};
  GaussianParams gauss{};
  HomodyneBin bin{};
};

std::array<SlotSetting, 4> unpack_params(const Scenario& scenario,
                                         const ParamVector& params);
ParamVector pack_params(const Scenario& scenario,
                        const std::array<SlotSetting, 4>& settings);

/// Builds the four observables (on-off slots carry eta, homodyne slots are
/// ideal) and returns S. Throws std::invalid_argument on layout mismatch.
double scenario_evaluate(const Scenario& scenario, const ParamVector& params,
                         double eta, double p, int cutoff);

/// The four observables in slot order, for callers that need more than S.
std::array<LocalObservable, 4> scenario_observables(const Scenario& scenario,
                                                    const ParamVector& params,
                                                    double eta, int cutoff);

}  // namespace spqn
