#include "spqn/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace spqn {

namespace {

bool all_finite(const Eigen::MatrixXcd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

}  // namespace

TruncatedOperator annihilation_matrix(int dim) {
  if (dim < 2) throw std::invalid_argument("annihilation_matrix: dim must be >= 2");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {a};
}

TruncatedOperator matrix_exponential(const TruncatedOperator& op) {
  if (!all_finite(op.entries))
    throw std::domain_error("matrix_exponential: non-finite entries");

  const int dim = op.dim();
  const double norm = op.entries.cwiseAbs().rowwise().sum().maxCoeff();

  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }

  const Eigen::MatrixXcd scaled_op =
      op.entries / std::ldexp(1.0, squarings);
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd term = result;
  for (int k = 1; k <= 40; ++k) {
    term = (term * scaled_op) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-17 * result.cwiseAbs().maxCoeff())
      break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return {result};
}

TruncatedOperator displacement_matrix(Complex alpha, int dim) {
  const Eigen::MatrixXcd a = annihilation_matrix(dim).entries;
  return matrix_exponential(
      {alpha * a.adjoint() - std::conj(alpha) * a});
}

TruncatedOperator squeezing_matrix(Complex xi, int dim) {
  const Eigen::MatrixXcd a = annihilation_matrix(dim).entries;
  const Eigen::MatrixXcd a2 = a * a;
  return matrix_exponential(
      {0.5 * (std::conj(xi) * a2 - xi * a2.adjoint())});
}

bool cutoff_converged(const OperatorBuilder& build, int dim, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("cutoff_converged: tol must be > 0");
  const Eigen::Matrix2cd coarse = build(dim).entries.topLeftCorner<2, 2>();
  const Eigen::Matrix2cd fine = build(2 * dim).entries.topLeftCorner<2, 2>();
  return (coarse - fine).cwiseAbs().maxCoeff() <= tol;
}

double hermite_wavefunction(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_wavefunction: n must be >= 0");
  const double psi0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return psi0;
  double prev = psi0;
  double curr = std::sqrt(2.0) * x * psi0;
  for (int k = 2; k <= n; ++k) {
    const double next =
        std::sqrt(2.0 / k) * x * curr - std::sqrt((k - 1.0) / k) * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

namespace {

// y = (-alpha a^dag + conj(alpha) a) x
void apply_displacement_generator(Complex alpha, const Eigen::VectorXcd& x,
                                  Eigen::VectorXcd& y) {
  const int dim = static_cast<int>(x.size());
  const Complex ac = std::conj(alpha);
  for (int m = 0; m < dim; ++m) {
    Complex v{0.0, 0.0};
    if (m >= 1) v -= alpha * std::sqrt(static_cast<double>(m)) * x(m - 1);
    if (m + 1 < dim) v += ac * std::sqrt(m + 1.0) * x(m + 1);
    y(m) = v;
  }
}

// y = (conj(xi) a^2 - xi a^dag^2)/2 x
void apply_squeezing_generator(Complex xi, const Eigen::VectorXcd& x,
                               Eigen::VectorXcd& y) {
  const int dim = static_cast<int>(x.size());
  const Complex xc = 0.5 * std::conj(xi);
  const Complex xm = 0.5 * xi;
  for (int m = 0; m < dim; ++m) {
    Complex v{0.0, 0.0};
    if (m + 2 < dim) v += xc * std::sqrt((m + 1.0) * (m + 2.0)) * x(m + 2);
    if (m >= 2) v -= xm * std::sqrt(m * (m - 1.0)) * x(m - 2);
    y(m) = v;
  }
}

// Applies exp(G) to v by segmented Taylor summation: exp(G) = exp(G/s)^s.
// The segment count keeps the per-application ladder amplification at the
// truncation boundary bounded (~20 for squeezing, whose factors grow with
// dim, ~8 for displacement, whose factors grow with sqrt(dim)); larger
// ratios let intermediate Taylor terms grow far above the result and the
// cancellation destroys the answer in double precision. Correctness against
// the dense matrix exponential is enforced by tests across the optimizer's
// bounds.
template <typename Apply>
void exp_action(const Apply& apply, double strength, Eigen::VectorXcd& v) {
  const int segments = std::max(1, static_cast<int>(std::ceil(strength)));
  const int dim = static_cast<int>(v.size());
  Eigen::VectorXcd sum(dim), term(dim), next(dim);
  for (int seg = 0; seg < segments; ++seg) {
    sum = v;
    term = v;
    for (int k = 1; k <= 120; ++k) {
      apply(term, next);
      term = next / static_cast<double>(segments * k);
      sum += term;
      if (term.norm() <= 1e-16 * sum.norm()) break;
    }
    v = sum;
  }
}

}  // namespace

Eigen::MatrixXcd gaussian_assist_columns(const GaussianParams& g, int dim) {
  if (dim < 2) throw std::invalid_argument("gaussian_assist_columns: dim must be >= 2");
  Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(dim, 2);
  const double abs_alpha = std::abs(g.alpha);
  const double abs_xi = std::abs(g.xi);
  for (int n = 0; n < 2; ++n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(n) = 1.0;
    if (abs_xi > 0.0) {
      exp_action(
          [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
            apply_squeezing_generator(g.xi, x, y);
          },
          abs_xi * dim / 40.0, v);
    }
    if (abs_alpha > 0.0) {
      exp_action(
          [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
            apply_displacement_generator(g.alpha, x, y);
          },
          abs_alpha * std::sqrt(static_cast<double>(dim)) / 8.0, v);
    }
    cols.col(n) = v;
  }
  return cols;
}

}  // namespace spqn
