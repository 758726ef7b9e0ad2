#ifndef HEMIROBIN_CLUSTER_HPP
#define HEMIROBIN_CLUSTER_HPP

#include <functional>
#include <string>
#include <vector>

#include "hemirobin/boundary.hpp"
#include "hemirobin/harmonics.hpp"
#include "hemirobin/numerics.hpp"

namespace hemirobin::cluster {

/// Matrix of the cluster operator over the Fourier basis
/// {e^{i m phi} : |m| <= ell, ell - m even}; entry(m', m) = A_{l,m'} c_{m'-m} A_{l,m}.
struct ClusterMatrix {
  int ell = 0;
  std::vector<int> basis;  // the ell+1 values of m, ascending
  num::HermitianMatrix matrix;
};

enum class SpectrumMethod { cluster_operator, galerkin };

struct GapSpectrum {
  int ell = 0;
  std::vector<double> gaps;  // ascending, length ell + 1
  SpectrumMethod method = SpectrumMethod::cluster_operator;
  double tolerance = 0;  // eigensolve tolerance metadata
};

ClusterMatrix build_cluster_matrix(const boundary::BoundarySymbol& sigma, int ell);

GapSpectrum gap_spectrum(const boundary::BoundarySymbol& sigma, int ell);

/// Closed-form trace c_0 * sum_m A_{l,m}^2.
double cluster_trace(const boundary::BoundarySymbol& sigma, int ell);

struct SandwichSpectra {
  GapSpectrum lower;  // V_l[sigma - eps |sigma|]
  GapSpectrum upper;  // V_l[sigma + eps |sigma|]
};

/// Spectra of V_l[sigma -+ eps |sigma|]. |sigma| is resampled at degree
/// 4*deg(sigma); adequacy is checked by recomputing at double that degree and
/// requiring 1e-6 agreement, otherwise the truncation is refused.
SandwichSpectra sandwich_spectra(const boundary::BoundarySymbol& sigma, int ell, double epsilon);

/// Smooth compactly supported window on (-1, 1): amplitude * bump(xi/radius),
/// the standard bump normalized to 1 at 0.
struct SmoothWindow {
  double radius = 1.0;
  double amplitude = 1.0;
  double operator()(double xi) const;
};

struct ModelTrace {
  double numeric = 0;  // Tr((C[w_l] M[sigma] C[w_l])^k) / (l+1)
  double limit = 0;    // (1/4pi) integral |w(xi)|^{2k} sigma_even(phi)^k
};

ModelTrace model_operator_trace(const SmoothWindow& window, const boundary::BoundarySymbol& sigma,
                                int ell, int power);

/// Hilbert-Schmidt norm of [M[sigma], C[w_l]] compressed to |m| <= l + deg(sigma)
/// (which captures the full operator, both factors being band-limited).
double commutator_hs_norm(const SmoothWindow& window, const boundary::BoundarySymbol& sigma, int ell);

/// CSV rows "ell,k,gap" with a header line, 17 significant digits.
std::string gap_spectrum_csv(const std::vector<GapSpectrum>& spectra);

}  // namespace hemirobin::cluster

#endif
