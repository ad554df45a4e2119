#include "spqn/measurement.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "spqn/errors.hpp"

namespace spqn {

IntervalIntegrals homodyne_interval_integrals(double z1, double z2) {
  if (!(z1 < z2))
    throw std::invalid_argument("homodyne_interval_integrals: requires z1 < z2");
  const double a = clamp_quadrature(z1);
  const double b = clamp_quadrature(z2);
  const double ea = std::exp(-a * a);
  const double eb = std::exp(-b * b);
  const double i00 = 0.5 * (std::erf(b) - std::erf(a));
  const double i01 = (ea - eb) / std::sqrt(2.0 * M_PI);
  const double i11 = i00 - (b * eb - a * ea) / std::sqrt(M_PI);
  return {i00, i01, i11};
}

LocalObservable homodyne_observable(const HomodyneParams& params) {
  const IntervalIntegrals in = homodyne_interval_integrals(params.z1, params.z2);
  const Complex phase = std::exp(Complex{0.0, params.theta});
  Eigen::Matrix2cd m;
  m(0, 0) = 2.0 * in.i00 - 1.0;
  m(1, 1) = 2.0 * in.i11 - 1.0;
  m(0, 1) = 2.0 * phase * in.i01;
  m(1, 0) = std::conj(m(0, 1));
  return {m, params};
}

HomodyneRemap gaussian_remap_coefficients(const GaussianParams& g, double theta) {
  const double r = std::abs(g.xi);
  const double phi_xi = (r > 0.0) ? std::arg(g.xi) : 0.0;
  // With <n|x_theta> = e^{-i n theta} psi_n(x), conjugating the quadrature
  // by U = D(-alpha) S(xi) gives a shift by sqrt(2) Re(alpha e^{i theta})
  // and a rotation/rescale controlled by phi_xi + 2 theta.
  const double psi = phi_xi + 2.0 * theta;
  const double delta = std::sqrt(2.0) * (g.alpha * std::exp(Complex{0.0, theta})).real();
  const double s = std::sqrt(std::cosh(2.0 * r) - std::sinh(2.0 * r) * std::cos(psi));
  const double phi =
      theta + std::atan2(std::sinh(r) * std::sin(psi),
                         std::cosh(r) - std::sinh(r) * std::cos(psi));
  assert(s > 0.0);
  return {delta, s, phi};
}

HomodyneParams gaussian_homodyne_remap(const GaussianParams& g, double theta,
                                       double z1, double z2) {
  if (!(z1 < z2))
    throw std::invalid_argument("gaussian_homodyne_remap: requires z1 < z2");
  const HomodyneRemap rm = gaussian_remap_coefficients(g, theta);
  return {rm.phi, clamp_quadrature((z1 + rm.delta) / rm.s),
          clamp_quadrature((z2 + rm.delta) / rm.s)};
}

LocalObservable onoff_observable(const OnOffParams& params, int dim) {
  if (!(params.eta > 0.0 && params.eta <= 1.0))
    throw std::invalid_argument("onoff_observable: eta must be in (0, 1]");
  const Eigen::MatrixXcd u = gaussian_assist_columns(params.gauss, dim);
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  double weight = 1.0;  // (1 - eta)^k
  for (int k = 0; k < dim; ++k) {
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n)
        p(m, n) += weight * std::conj(u(k, m)) * u(k, n);
    weight *= 1.0 - params.eta;
    if (weight == 0.0) break;
  }
  return {Eigen::Matrix2cd::Identity() - 2.0 * p, params};
}

LocalObservable onoff_observable_auto(const OnOffParams& params, int dim,
                                      double tol, int max_dim) {
  LocalObservable coarse = onoff_observable(params, dim);
  while (dim < max_dim) {
    dim *= 2;
    LocalObservable fine = onoff_observable(params, dim);
    if ((coarse.matrix - fine.matrix).cwiseAbs().maxCoeff() <= tol) return fine;
    coarse = fine;
  }
  throw ConvergenceError("onoff_observable_auto: cutoff exceeded " +
                         std::to_string(max_dim));
}

int converged_onoff_cutoff(double eta, int start, double tol, int max_dim) {
  // Worst in-bound assist: |alpha| = 2 sqrt(2) (component bounds +-2), |r| = 1.
  const OnOffParams corner{{Complex{2.0, 2.0}, Complex{1.0, 0.0}}, eta};
  int dim = start;
  Eigen::Matrix2cd coarse = onoff_observable(corner, dim).matrix;
  while (dim < max_dim) {
    const Eigen::Matrix2cd fine = onoff_observable(corner, 2 * dim).matrix;
    if ((coarse - fine).cwiseAbs().maxCoeff() <= tol) return 2 * dim;
    dim *= 2;
    coarse = fine;
  }
  throw ConvergenceError("converged_onoff_cutoff: cutoff exceeded " +
                         std::to_string(max_dim));
}

Complex vacuum_overlap_oracle(const GaussianParams& g, int n) {
  if (n != 0 && n != 1)
    throw std::invalid_argument("vacuum_overlap_oracle: n must be 0 or 1");
  const double r = std::abs(g.xi);
  const Complex phase = (r > 0.0) ? g.xi / r : Complex{1.0, 0.0};
  const Complex ac = std::conj(g.alpha);
  const Complex v0 = std::exp(-0.5 * std::norm(g.alpha) -
                              0.5 * phase * std::tanh(r) * ac * ac) /
                     std::sqrt(std::cosh(r));
  if (n == 0) return v0;
  return ac / std::cosh(r) * v0;
}

double squeezing_db(double r) {
  return 20.0 * std::abs(r) / std::log(10.0);
}

}  // namespace spqn
