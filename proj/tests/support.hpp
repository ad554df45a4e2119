#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "spqn/fock.hpp"

namespace spqn::testing {

/// Deterministic, platform-independent uniform source for property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::uint64_t state_;
};

/// Composite 16-point Gauss-Legendre quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, int panels = 64) {
  static constexpr std::array<double, 8> x = {
      0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
      0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
      0.9445750230732326, 0.9894009349916499};
  static constexpr std::array<double, 8> w = {
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
      0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
      0.0622535239386479, 0.0271524594117541};
  double total = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double acc = 0.0;
    for (int i = 0; i < 8; ++i)
      acc += w[i] * (f(mid + 0.5 * h * x[i]) + f(mid - 0.5 * h * x[i]));
    total += 0.5 * h * acc;
  }
  return total;
}

/// <m|D(alpha)|0> = e^{-|alpha|^2/2} alpha^m / sqrt(m!).
inline Complex coherent_overlap(Complex alpha, int m) {
  Complex num{1.0, 0.0};
  double fact = 1.0;
  for (int k = 1; k <= m; ++k) {
    num *= alpha;
    fact *= k;
  }
  return std::exp(-0.5 * std::norm(alpha)) * num / std::sqrt(fact);
}

/// Squeezed vacuum expansion: <2k|S(xi)|0> =
/// (cosh r)^{-1/2} (-e^{i phi} tanh r / 2)^k sqrt((2k)!) / k!.
inline Complex squeezed_vacuum_overlap(Complex xi, int two_k) {
  if (two_k % 2 != 0) return {0.0, 0.0};
  const int k = two_k / 2;
  const double r = std::abs(xi);
  const Complex phase = r == 0.0 ? Complex{1.0, 0.0} : xi / r;
  Complex num{1.0, 0.0};
  double kfact = 1.0;
  double two_kfact = 1.0;
  for (int j = 1; j <= k; ++j) {
    num *= -0.5 * phase * std::tanh(r);
    kfact *= j;
  }
  for (int j = 1; j <= two_k; ++j) two_kfact *= j;
  return num * std::sqrt(two_kfact) / (kfact * std::sqrt(std::cosh(r)));
}

/// Dense-path columns U|0>, U|1> of U = D(-alpha) S(xi): the independent
/// cross-check for the banded fast path.
inline Eigen::MatrixXcd dense_assist_columns(const GaussianParams& g, int dim) {
  const Eigen::MatrixXcd u = displacement_matrix(-g.alpha, dim).entries *
                             squeezing_matrix(g.xi, dim).entries;
  return u.leftCols(2);
}

/// Fock-space oracle for the Gaussian-assisted binning observable:
/// M_mn = 2 int_{z1}^{z2} <m|U^dag|x_theta><x_theta|U|n> dx - delta_mn,
/// with <x_theta|k> = e^{ik theta} psi_k(x), evaluated by quadrature.
inline Eigen::Matrix2cd assisted_binning_oracle(const GaussianParams& g,
                                                double theta, double z1,
                                                double z2, int dim) {
  const Eigen::MatrixXcd cols = gaussian_assist_columns(g, dim);
  // <x_theta|U|n> = sum_k e^{ik theta} psi_k(x) U_kn, psi_k by recurrence.
  const auto transformed = [&](double x) {
    std::array<Complex, 2> t{Complex{0.0, 0.0}, Complex{0.0, 0.0}};
    double prev = 0.0;
    double curr = hermite_wavefunction(0, x);
    Complex phase{1.0, 0.0};
    const Complex step = std::exp(Complex{0.0, theta});
    for (int k = 0; k < dim; ++k) {
      t[0] += phase * curr * cols(k, 0);
      t[1] += phase * curr * cols(k, 1);
      const double next = std::sqrt(2.0 / (k + 1)) * x * curr -
                          std::sqrt(k / (k + 1.0)) * prev;
      prev = curr;
      curr = next;
      phase *= step;
    }
    return t;
  };
  Eigen::Matrix2cd accum = Eigen::Matrix2cd::Zero();
  const int panels = 96;
  const double h = (z2 - z1) / panels;
  static constexpr std::array<double, 8> gx = {
      0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
      0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
      0.9445750230732326, 0.9894009349916499};
  static constexpr std::array<double, 8> gw = {
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
      0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
      0.0622535239386479, 0.0271524594117541};
  for (int p = 0; p < panels; ++p) {
    const double mid = z1 + (p + 0.5) * h;
    for (int i = 0; i < 8; ++i)
      for (double sign : {-1.0, 1.0}) {
        const auto t = transformed(mid + sign * 0.5 * h * gx[i]);
        const double w = 0.5 * h * gw[i];
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            accum(a, b) += w * std::conj(t[a]) * t[b];
      }
  }
  return 2.0 * accum - Eigen::Matrix2cd::Identity();
}

}  // namespace spqn::testing
