#ifndef HEMIROBIN_BOUNDARY_HPP
#define HEMIROBIN_BOUNDARY_HPP

#include <span>
#include <string>
#include <vector>

#include "hemirobin/harmonics.hpp"
#include "hemirobin/numerics.hpp"

namespace hemirobin::boundary {

using num::cplx;

/// Robin coefficient sigma on the equator as a trigonometric polynomial,
/// sigma(phi) = sum_{|k| <= D} c_k e^{i k phi} with c_{-k} = conj(c_k).
/// Fourier convention: c_k = (1/2pi) int sigma(phi) e^{-i k phi} dphi.
class BoundarySymbol {
 public:
  BoundarySymbol() : coeffs_(1, cplx(0)) {}

  /// coeffs indexed k + D for k in [-D, D]. Hermitian symmetry is enforced by
  /// averaging c_k with conj(c_{-k}); a deviation beyond 1e-10 of the scale is
  /// rejected as a symmetry violation.
  BoundarySymbol(int degree, std::span<const cplx> coeffs);

  int degree() const { return int(coeffs_.size() / 2); }
  cplx coeff(int k) const {
    int d = degree();
    return (k < -d || k > d) ? cplx(0) : coeffs_[k + d];
  }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  /// Max |sigma| on a dense grid (2048 points); used for tolerances.
  double sup_norm() const;
  bool is_zero() const;
  /// True when only even-index (resp. only odd-index) coefficients survive.
  bool is_even(double tol = 1e-14) const;
  bool is_odd(double tol = 1e-14) const;

 private:
  std::vector<cplx> coeffs_;
};

/// Trapezoidal/DFT projection of uniform samples at phi_j = -pi + 2 pi j / N.
/// Requires N >= 4 * degree + 4; smaller N is refused (aliasing).
BoundarySymbol from_samples(std::span<const double> values, int degree);

/// Even part: keeps even-index Fourier coefficients
/// (sigma_even(phi) = (sigma(phi) + sigma(phi + pi)) / 2).
BoundarySymbol even_part(const BoundarySymbol& s);

/// Odd part; even_part + odd_part reproduces the symbol exactly.
BoundarySymbol odd_part(const BoundarySymbol& s);

struct EvenOddSplit {
  BoundarySymbol even;
  BoundarySymbol odd;
};
EvenOddSplit even_odd_split(const BoundarySymbol& s);

/// Pointwise value; asserts the imaginary residue is below 1e-12 of scale.
double evaluate(const BoundarySymbol& s, double phi);

/// |sigma| resampled as a symbol of the given degree (|sigma| is generally
/// not a trigonometric polynomial; degree controls the truncation).
BoundarySymbol abs_symbol(const BoundarySymbol& s, int degree);

/// Pointwise linear combination a*s1 + b*s2.
BoundarySymbol axpy(double a, const BoundarySymbol& s1, double b, const BoundarySymbol& s2);
BoundarySymbol scale(const BoundarySymbol& s, double factor);

/// Compression of multiplication by sigma to span{e^{i m phi} : m in basis}:
/// entry(row m', col m) = c_{m' - m}.
num::HermitianMatrix multiplication_matrix(const BoundarySymbol& s, std::span<const int> basis_indices);

/// Convolution by a symbol sequence is diagonal in the Fourier basis.
num::HermitianMatrix convolution_matrix(const harm::SymbolSequence& sym, std::span<const int> basis_indices);

/// JSON ingestion:
///   {"type":"coeffs","coeffs":[[k,re,im],...]}
///   {"type":"samples","values":[...],"degree":D}
/// Throws std::invalid_argument naming the offending field.
BoundarySymbol from_json(const std::string& text);
std::string to_json(const BoundarySymbol& s);

}  // namespace hemirobin::boundary

#endif
