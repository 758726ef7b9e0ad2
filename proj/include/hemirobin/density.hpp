#ifndef HEMIROBIN_DENSITY_HPP
#define HEMIROBIN_DENSITY_HPP

#include <functional>
#include <vector>

#include "hemirobin/boundary.hpp"

namespace hemirobin::density {

/// Test function f with f(0) = 0: a polynomial with zero constant term,
/// optionally multiplied by the standard smooth bump supported on (-R, R).
/// Without the bump only a linear polynomial is accepted by the limiting
/// integrals (higher powers make the xi-integral divergent).
struct TestFunction {
  enum class Kind { polynomial, bump_polynomial };
  Kind kind = Kind::polynomial;
  std::vector<double> coeffs;  // f poly part = sum_{k>=1} coeffs[k] x^k; coeffs[0] must be 0
  double radius = 1.0;         // bump support for Kind::bump_polynomial

  double operator()(double x) const;
  bool compactly_supported() const { return kind == Kind::bump_polynomial; }
  void validate() const;  // throws std::invalid_argument
};

/// (1/4pi) int_{-pi}^{pi} int_{-1}^{1} f(4 sigma_even(phi) / (pi sqrt(1-xi^2))) dxi dphi,
/// with xi = sin t so the edge xi = +-1 is handled smoothly. Node counts are
/// doubled until the result is stable to 1e-8 relative.
double limit_functional(const boundary::BoundarySymbol& sigma, const TestFunction& f);

/// Same integral with the constant 4 replaced by `scale` (the Weinstein
/// comparison needs scale = 2).
double limit_functional_scaled(const boundary::BoundarySymbol& sigma, const TestFunction& f,
                               double scale);

/// The limiting cluster density rho(sigma; y) for y != 0: the phi-integral of
/// (4 s/pi)^2 (1 - (4 s / (pi y))^2)_+^{-1/2} / (2 pi y^3) with s the positive
/// (y > 0) or negative (y < 0) part of sigma_even. Inverse-square-root
/// endpoints are absorbed by a cosine substitution per sub-interval.
double rho_density(const boundary::BoundarySymbol& sigma, double y);

struct DensityReport {
  std::vector<int> ladder;
  std::vector<double> empirical;  // (1/(l+1)) sum f(gap)
  std::vector<double> limit;      // constant column
  std::vector<double> deviation;  // |empirical - limit|
};

DensityReport empirical_vs_limit(const boundary::BoundarySymbol& sigma, const TestFunction& f,
                                 const std::vector<int>& ell_ladder);

struct WeinsteinComparison {
  double naive = 0;               // geodesic-average transplant (scale 2)
  double correct = 0;             // the true limit (scale 4)
  double substitution_check = 0;  // |naive(sigma) - correct(sigma/2)|
};

WeinsteinComparison weinstein_comparison(const boundary::BoundarySymbol& sigma, const TestFunction& f);

/// Average of the concentrated potential V_eps over the reflected geodesic
/// Gamma(theta, phi) (two semicircles meeting the equator at azimuths
/// phi +- pi/2). Converges to 2 sigma_even(phi + pi/2) / (pi sin theta) as
/// eps -> 0. Requires 0 < eps < theta / 2.
double geodesic_average(double theta, double phi, const boundary::BoundarySymbol& sigma, double eps);

}  // namespace hemirobin::density

#endif
