#ifndef HEMIROBIN_NUMERICS_HPP
#define HEMIROBIN_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hemirobin::num {

using cplx = std::complex<double>;

/// Dense Hermitian matrix. Hermitian symmetry is maintained by
/// construction: set()/add() write both triangles, diagonals are kept real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t dim) : n_(dim), a_(dim * dim) {}

  /// Builds from an arbitrary dense square array by Hermitian symmetrization
  /// (M + M^H)/2. Throws std::invalid_argument on non-finite input.
  static HermitianMatrix from_dense(std::size_t dim, std::span<const cplx> entries);

  std::size_t dim() const { return n_; }
  cplx operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, cplx v);
  void add(std::size_t i, std::size_t j, cplx v) { set(i, j, a_[i * n_ + j] + v); }

  bool all_finite() const;
  /// True when every imaginary part vanishes exactly.
  bool is_real() const;
  double frobenius_norm() const;
  /// Max absolute entry; cheap stand-in for the operator norm in tolerances.
  double max_abs() const;
  double trace() const;

  const std::vector<cplx>& data() const { return a_; }

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<cplx> vectors;        // row-major; column k is the k-th eigenvector
  std::size_t dim = 0;
  cplx vector(std::size_t i, std::size_t k) const { return vectors[i * dim + k]; }
};

/// ln Gamma(x) for x > 0, Lanczos approximation (g = 607/128, 15 terms).
/// Relative error below 1e-13 on [0.5, 1e6]. Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// Full spectral decomposition. Cyclic Jacobi for modest dimensions (and for
/// all complex input); Householder tridiagonalization + implicit QL for large
/// real matrices. Eigenvalues ascending, eigenvector matrix unitary.
EigenResult hermitian_eigen(const HermitianMatrix& m);

/// Eigenvalues only (skips accumulating the rotations).
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m);

struct GeneralizedEigenResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<cplx> vectors;        // column k solves A c = lambda_k G c
  std::size_t dim = 0;
};

/// A c = lambda G c for Hermitian A and positive definite G, by Cholesky
/// reduction G = R^H R followed by a Hermitian eigensolve of R^{-H} A R^{-1}.
/// Throws std::runtime_error("gram matrix not positive definite") when the
/// Cholesky factorization encounters a non-positive pivot.
GeneralizedEigenResult generalized_eigen(const HermitianMatrix& a, const HermitianMatrix& g,
                                         bool want_vectors = false);

/// Count of |lambda| > rel_tol * scale.
int numerical_rank(std::span<const double> eigenvalues, double scale, double rel_tol);

struct TraceBoundCheck {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

/// Checks |Tr f(A) - Tr f(B)| <= max|f'| * ||A - B||_S1 for a polynomial f
/// given by its coefficients (f(x) = sum_k coeffs[k] x^k). max|f'| is sampled
/// on a 1e4-point grid over [range_lo, range_hi]; the trace norm is the sum of
/// absolute eigenvalues of the Hermitian difference.
TraceBoundCheck trace_difference_bound_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                             std::span<const double> poly_coeffs,
                                             double range_lo, double range_hi);

struct QuadratureRule {
  enum class Kind { gauss_legendre, uniform_periodic };
  std::vector<double> nodes;
  std::vector<double> weights;
  Kind kind = Kind::gauss_legendre;
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_legendre(int n);

/// n-point uniform rule on [-pi, pi), weights 2*pi/n (trapezoid on the circle).
QuadratureRule uniform_periodic(int n);

}  // namespace hemirobin::num

#endif
