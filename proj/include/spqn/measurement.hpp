#pragma once

#include <variant>

#include "spqn/fock.hpp"

namespace spqn {

/// erf saturates to machine precision beyond |x| = 12, so +-12 stands in
/// for +-infinity on the quadrature axis.
inline constexpr double kQuadratureClamp = 12.0;

inline double clamp_quadrature(double z) {
  if (z < -kQuadratureClamp) return -kQuadratureClamp;
  if (z > kQuadratureClamp) return kQuadratureClamp;
  return z;
}

/// Binned homodyne measurement: quadrature phase theta and acceptance
/// interval [z1, z2] (outcome +1 inside, -1 outside).
struct HomodyneParams {
  double theta{0.0};
  double z1{-kQuadratureClamp};
  double z2{kQuadratureClamp};
};

/// Gaussian-assisted on-off detection with efficiency eta in (0, 1].
struct OnOffParams {
  GaussianParams gauss{};
  double eta{1.0};
};

/// Shift/scale/phase coefficients of the Gaussian -> homodyne remap.
struct HomodyneRemap {
  double delta{0.0};
  double s{1.0};
  double phi{0.0};
};

/// Dichotomic observable restricted to the {|0>, |1>} manifold.
struct LocalObservable {
  Eigen::Matrix2cd matrix;
  std::variant<HomodyneParams, OnOffParams> provenance;
};

/// Overlap integrals I_mn = int_{z1}^{z2} psi_m psi_n dx for m, n in {0, 1}.
struct IntervalIntegrals {
  double i00;
  double i01;
  double i11;
};

/// Closed forms:
///   I00 = (erf(z2) - erf(z1)) / 2
///   I01 = (e^{-z1^2} - e^{-z2^2}) / sqrt(2 pi)
///   I11 = I00 - (z2 e^{-z2^2} - z1 e^{-z1^2}) / sqrt(pi)
/// Endpoints are clamped to +-12. Throws std::invalid_argument if z1 >= z2.
IntervalIntegrals homodyne_interval_integrals(double z1, double z2);

/// 2x2 observable of interval-binned homodyne detection:
/// M00 = 2 I00 - 1, M11 = 2 I11 - 1, M01 = 2 e^{i theta} I01.
LocalObservable homodyne_observable(const HomodyneParams& params);

/// Shift, scale and phase such that the Gaussian-assisted binning operator
/// U^dag B(theta, z1, z2) U equals the plain B(phi, (z1+delta)/s, (z2+delta)/s).
HomodyneRemap gaussian_remap_coefficients(const GaussianParams& g, double theta);

/// Folds the Gaussian assist into plain homodyne parameters (endpoints
/// clamped to +-12 after the remap).
HomodyneParams gaussian_homodyne_remap(const GaussianParams& g, double theta,
                                       double z1, double z2);

/// 2x2 observable of Gaussian-assisted lossy on-off detection:
/// M = I - 2 P with P_mn = sum_k (1-eta)^k conj(U_km) U_kn,
/// U = D(-alpha) S(xi) truncated at dim. Click -> +1, no click -> -1.
LocalObservable onoff_observable(const OnOffParams& params, int dim);

/// Same observable with the cutoff doubled from `dim` until its entries are
/// stable to `tol`; throws ConvergenceError beyond max_dim.
LocalObservable onoff_observable_auto(const OnOffParams& params, int dim = 40,
                                      double tol = 1e-8, int max_dim = 1024);

/// Smallest power-of-two-scaled cutoff >= start at which the on-off
/// observable is cutoff-stable for the worst-case in-bound parameters.
int converged_onoff_cutoff(double eta, int start = 40, double tol = 1e-8,
                           int max_dim = 1024);

/// Closed-form <0| D(-alpha) S(xi) |n> for n in {0, 1}:
///   n = 0: (cosh r)^{-1/2} exp(-|alpha|^2/2 - e^{i phi} tanh(r) conj(alpha)^2 / 2)
///   n = 1: conj(alpha) / cosh(r) times the n = 0 value.
Complex vacuum_overlap_oracle(const GaussianParams& g, int n);

/// Squeezing strength in decibels: 10 log10(e^{2|r|}).
double squeezing_db(double r);

}  // namespace spqn
