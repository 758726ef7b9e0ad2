#ifndef HEMIROBIN_HARMONICS_HPP
#define HEMIROBIN_HARMONICS_HPP

#include <vector>

namespace hemirobin::harm {

// Equator trace data of hemisphere spherical harmonics.
//
// Sign conventions: associated Legendre functions carry the Condon-Shortley
// phase, which the closed forms for P_l^m(0) and d/dx P_l^m(0) assume. The
// amplitudes A_{l,m} are the positive magnitudes of the equator traces; the
// (-1)^{(l+m)/2} phases are dropped everywhere, which conjugates every
// operator by a diagonal unitary and leaves all spectra unchanged (tested,
// not assumed). B_{l,m} keeps its natural sign from the derivative formula.

/// Per-cluster equator trace data, indexed by m in [-ell, ell] via m + ell.
/// a[m]: trace amplitude, zero when ell-m is odd, positive otherwise.
/// b[m]: normal-derivative amplitude, zero when ell-m is even, nonzero otherwise.
struct TraceAmplitudes {
  int ell = 0;
  std::vector<double> a;
  std::vector<double> b;
  double at_a(int m) const { return (m < -ell || m > ell) ? 0.0 : a[m + ell]; }
  double at_b(int m) const { return (m < -ell || m > ell) ? 0.0 : b[m + ell]; }
};

enum class SymbolKind { x, y, z };

/// Fourier coefficients of one of the equator trigonometric polynomials
/// x_ell (amplitudes), y_ell (squared amplitudes), z_ell (edge-regularized
/// asymptotic profile (2/sqrt(pi)) (1-(m/ell)^2)^{-1/4} on |m| <= ell-2).
struct SymbolSequence {
  int ell = 0;
  SymbolKind kind = SymbolKind::x;
  std::vector<double> coeffs;  // indexed m + ell
  double at(int m) const { return (m < -ell || m > ell) ? 0.0 : coeffs[m + ell]; }
};

/// gamma(x) = Gamma(x/2 + 1/2) / Gamma(x/2 + 1), x >= 0.
double gamma_ratio(double x);

/// Amplitudes A_{l,m} (Gamma-ratio product, positive root) and B_{l,m}
/// (normal-derivative closed form); all factorial ratios evaluated in
/// log space so that ell up to a few thousand stays finite.
TraceAmplitudes trace_amplitudes(int ell);

/// Associated Legendre P_l^m(x), Condon-Shortley phase, |x| <= 1, m may be
/// negative (standard factorial-ratio extension). Computed through the
/// normalized recurrence; may overflow for large l with m near l, where the
/// true value itself exceeds double range.
double legendre_p_at(int ell, int m, double x);

/// Normalized half-interval profile  Yhat_{l,m}(x) = sqrt((2l+1)(l-m)!/(l+m)!) P_l^m(x),
/// satisfying  int_0^1 Yhat^2 dx = 1. This is sqrt(2 pi) times the theta-factor
/// of the hemisphere-orthonormal harmonic.
double norm_legendre_at(int ell, int m, double x);

/// Column of Yhat_{l,m}(x) for l = |m| .. lmax (index l - |m|).
std::vector<double> norm_legendre_column(int lmax, int m, double x);

/// Column of d/dx Yhat_{l,m}(x), same layout.
std::vector<double> norm_legendre_derivative_column(int lmax, int m, double x);

SymbolSequence symbol(int ell, SymbolKind kind);

struct AmplitudeDiagnostics {
  double sum_a2 = 0;      // sum over m of A^2
  double sup_a2 = 0;      // max over m of A^2
  double l1_deviation = 0;  // sum |A^2 - (4/pi)(1-(m/l)^2)^{-1/2}| over |m| <= l-1
};

AmplitudeDiagnostics amplitude_diagnostics(int ell);

/// sup_m | sum_{k != ell, k <= k_max} A_{k,m}^2 / (k(k+1) - lambda) |,
/// the Fourier-coefficient supremum of the boundary-restricted reduced
/// resolvent. lambda must avoid the Neumann values k(k+1).
double resolvent_coefficient_bound(int ell, double lambda, int k_max);

}  // namespace hemirobin::harm

#endif
