#include "spqn/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace spqn {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::DisplacementOnly: return "do";
    case Variant::SqueezedDisplaced: return "sdo";
    case Variant::SqueezeOnly: return "squeeze-only";
  }
  throw std::logic_error("unreachable");
}

Variant variant_from_name(const std::string& name) {
  if (name == "do") return Variant::DisplacementOnly;
  if (name == "sdo") return Variant::SqueezedDisplaced;
  if (name == "squeeze-only") return Variant::SqueezeOnly;
  throw std::invalid_argument("unknown variant: " + name);
}

bool Scenario::has_onoff() const {
  for (const auto& slot : slots)
    if (slot.kind == SlotKind::OnOff) return true;
  return false;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"4h", "3h", "2h-i",
                                                 "2h-ii", "1h", "0h"};
  return names;
}

Scenario make_scenario(const std::string& name, Variant variant) {
  std::array<SlotKind, 4> kinds;
  const SlotKind o = SlotKind::OnOff;
  const SlotKind h = SlotKind::Homodyne;
  if (name == "4h") kinds = {h, h, h, h};
  else if (name == "3h") kinds = {o, h, h, h};
  else if (name == "2h-i") kinds = {o, o, h, h};
  else if (name == "2h-ii") kinds = {o, h, o, h};
  else if (name == "1h") kinds = {o, h, o, o};
  else if (name == "0h") kinds = {o, o, o, o};
  else throw std::invalid_argument("unknown scenario: " + name);

  Scenario sc;
  sc.name = name;
  sc.variant = variant;
  const bool disp = variant != Variant::SqueezeOnly;
  const bool sq = variant != Variant::DisplacementOnly;
  for (int i = 0; i < 4; ++i) sc.slots[i] = {kinds[i], disp, sq};
  return sc;
}

SourceState source_state(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("source_state: p must be in [0, 1]");
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  // |psi> = (|10> + |01>)/sqrt(2) on basis {|00>, |01>, |10>, |11>}
  rho(1, 1) = 0.5 * p;
  rho(2, 2) = 0.5 * p;
  rho(1, 2) = 0.5 * p;
  rho(2, 1) = 0.5 * p;
  rho(0, 0) = 1.0 - p;
  return {p, rho};
}

double correlation(const SourceState& state, const LocalObservable& a,
                   const LocalObservable& b) {
  const Eigen::Matrix4cd ab = Eigen::kroneckerProduct(a.matrix, b.matrix);
  const Complex e = (state.rho * ab).trace();
  if (std::abs(e.imag()) > 1e-10)
    throw std::runtime_error("correlation: imaginary residue exceeds 1e-10");
  return e.real();
}

double chsh_value(double e11, double e12, double e21, double e22) {
  constexpr double slack = 1.0 + 1e-9;
  if (std::abs(e11) > slack || std::abs(e12) > slack || std::abs(e21) > slack ||
      std::abs(e22) > slack)
    throw std::invalid_argument("chsh_value: |E| must be <= 1");
  return std::abs(e11 + e12 + e21 - e22);
}

namespace {

const char* kSlotNames[4] = {"A1", "A2", "B1", "B2"};

}  // namespace

std::vector<CoordSpec> param_layout(const Scenario& scenario) {
  std::vector<CoordSpec> layout;
  for (int i = 0; i < 4; ++i) {
    const std::string slot = kSlotNames[i];
    if (scenario.slots[i].kind == SlotKind::OnOff) {
      if (scenario.slots[i].allow_displacement) {
        layout.push_back({slot + ".re_alpha", -2.0, 2.0});
        layout.push_back({slot + ".im_alpha", -2.0, 2.0});
      }
      if (scenario.slots[i].allow_squeezing) {
        layout.push_back({slot + ".r", -1.0, 1.0});
        layout.push_back({slot + ".phi_xi", -M_PI, M_PI});
      }
    } else {
      layout.push_back({slot + ".theta", -M_PI, M_PI});
      layout.push_back({slot + ".center", -6.0, 6.0});
      layout.push_back({slot + ".width", 1e-3, 24.0});
    }
  }
  return layout;
}

int param_count(const Scenario& scenario) {
  return static_cast<int>(param_layout(scenario).size());
}

HomodyneParams HomodyneBin::to_params() const {
  return {theta, clamp_quadrature(center - 0.5 * width),
          clamp_quadrature(center + 0.5 * width)};
}

std::array<SlotSetting, 4> unpack_params(const Scenario& scenario,
                                         const ParamVector& params) {
  if (static_cast<int>(params.size()) != param_count(scenario))
    throw std::invalid_argument("unpack_params: layout mismatch, expected " +
                                std::to_string(param_count(scenario)) +
                                " parameters, got " +
                                std::to_string(params.size()));
  std::array<SlotSetting, 4> settings;
  std::size_t k = 0;
  for (int i = 0; i < 4; ++i) {
    SlotSetting& s = settings[i];
    s.kind = scenario.slots[i].kind;
    if (s.kind == SlotKind::OnOff) {
      if (scenario.slots[i].allow_displacement) {
        s.gauss.alpha = Complex{params[k], params[k + 1]};
        k += 2;
      }
      if (scenario.slots[i].allow_squeezing) {
        s.gauss.xi = params[k] * std::exp(Complex{0.0, params[k + 1]});
        k += 2;
      }
    } else {
      s.bin = {params[k], params[k + 1], params[k + 2]};
      k += 3;
    }
  }
  return settings;
}

ParamVector pack_params(const Scenario& scenario,
                        const std::array<SlotSetting, 4>& settings) {
  ParamVector params;
  for (int i = 0; i < 4; ++i) {
    const SlotSetting& s = settings[i];
    if (s.kind != scenario.slots[i].kind)
      throw std::invalid_argument("pack_params: slot kind mismatch");
    if (s.kind == SlotKind::OnOff) {
      if (scenario.slots[i].allow_displacement) {
        params.push_back(s.gauss.alpha.real());
        params.push_back(s.gauss.alpha.imag());
      }
      if (scenario.slots[i].allow_squeezing) {
        params.push_back(std::abs(s.gauss.xi));
        params.push_back(s.gauss.xi == Complex{} ? 0.0 : std::arg(s.gauss.xi));
      }
    } else {
      params.push_back(s.bin.theta);
      params.push_back(s.bin.center);
      params.push_back(s.bin.width);
    }
  }
  return params;
}

std::array<LocalObservable, 4> scenario_observables(const Scenario& scenario,
                                                    const ParamVector& params,
                                                    double eta, int cutoff) {
  const auto settings = unpack_params(scenario, params);
  std::array<LocalObservable, 4> obs;
  for (int i = 0; i < 4; ++i) {
    if (settings[i].kind == SlotKind::OnOff)
      obs[i] = onoff_observable({settings[i].gauss, eta}, cutoff);
    else
      obs[i] = homodyne_observable(settings[i].bin.to_params());
  }
  return obs;
}

double scenario_evaluate(const Scenario& scenario, const ParamVector& params,
                         double eta, double p, int cutoff) {
  const auto obs = scenario_observables(scenario, params, eta, cutoff);
  const SourceState state = source_state(p);
  const double e11 = correlation(state, obs[0], obs[2]);
  const double e12 = correlation(state, obs[0], obs[3]);
  const double e21 = correlation(state, obs[1], obs[2]);
  const double e22 = correlation(state, obs[1], obs[3]);
  // Each party may relabel the +/-1 outcomes of either setting, which flips
  // the sign of that setting's two correlators and moves the minus sign of
  // the CHSH combination onto any single correlator. The detector families
  // here are not closed under negation, so this freedom is applied when
  // combining correlators rather than absorbed into the observables.
  return std::max(std::max(chsh_value(e12, e21, e22, e11),
                           chsh_value(e11, e21, e22, e12)),
                  std::max(chsh_value(e11, e12, e22, e21),
                           chsh_value(e11, e12, e21, e22)));
}

}  // namespace spqn
