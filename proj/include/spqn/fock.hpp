#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace spqn {

using Complex = std::complex<double>;

/// Operator on the truncated photon-number basis {|0>, ..., |dim-1>}.
struct TruncatedOperator {
  Eigen::MatrixXcd entries;

  int dim() const { return static_cast<int>(entries.rows()); }
};

/// Parameters of the Gaussian assist unitary U = D(-alpha) S(xi).
/// xi = r e^{i phi}; a negative r is folded into the phase, only the
/// complex product enters the operator.
struct GaussianParams {
  Complex alpha{0.0, 0.0};
  Complex xi{0.0, 0.0};

  bool is_identity() const { return alpha == Complex{} && xi == Complex{}; }
};

/// Annihilation operator: entry (m, n) = sqrt(n) for m = n-1.
/// Throws std::invalid_argument for dim < 2.
TruncatedOperator annihilation_matrix(int dim);

/// exp(op) by scaling-and-squaring with a Taylor kernel.
/// Throws std::domain_error on non-finite entries.
TruncatedOperator matrix_exponential(const TruncatedOperator& op);

/// D(alpha) = exp(alpha a^dag - conj(alpha) a) on the truncated basis.
TruncatedOperator displacement_matrix(Complex alpha, int dim);

/// S(xi) = exp((conj(xi) a^2 - xi a^dag^2)/2) on the truncated basis.
TruncatedOperator squeezing_matrix(Complex xi, int dim);

using OperatorBuilder = std::function<TruncatedOperator(int dim)>;

/// True iff the top-left 2x2 block of build(dim) changes by at most tol
/// elementwise when the cutoff is doubled.
bool cutoff_converged(const OperatorBuilder& build, int dim, double tol);

/// n-th quadrature wavefunction, vacuum variance 1/2:
/// psi_n(x) = H_n(x) e^{-x^2/2} / (pi^{1/4} sqrt(2^n n!)),
/// evaluated by the stable three-term recurrence.
double hermite_wavefunction(int n, double x);

/// Columns U|0> and U|1> of U = D(-alpha) S(xi), dim x 2, computed by the
/// exponential action of the (banded) generators on the basis vectors.
/// Identical to the dense displacement_matrix(-alpha) * squeezing_matrix(xi)
/// columns, but cheap enough for inner optimization loops.
Eigen::MatrixXcd gaussian_assist_columns(const GaussianParams& g, int dim);

}  // namespace spqn
