#ifndef HEMIROBIN_GALERKIN_HPP
#define HEMIROBIN_GALERKIN_HPP

#include <vector>

#include "hemirobin/boundary.hpp"
#include "hemirobin/numerics.hpp"

namespace hemirobin::galerkin {

/// Truncated mixed-parity basis: hemisphere restrictions of all spherical
/// harmonics of degree <= lmax. neumann <=> ell - m even (zero normal
/// derivative at the equator); the complementary parity has zero trace.
/// Neumann-type entries carry the sign normalization that makes their equator
/// trace coefficients positive (a diagonal unitary; spectra unaffected).
struct BasisEntry {
  int ell = 0;
  int m = 0;
  bool neumann = true;
};

struct GalerkinBasis {
  int lmax = 0;
  std::vector<BasisEntry> entries;  // ordered by m ascending, then ell ascending
};

GalerkinBasis make_basis(int lmax);

/// L2(hemisphere) Gram matrix: block-diagonal in m; identity within a parity
/// class; cross-parity entries are the half-interval overlaps
/// int_0^1 Rhat_l Rhat_l' dx, evaluated by exact-degree Gauss-Legendre.
///
/// The matrix is positive definite in exact arithmetic but its smallest
/// eigenvalue decays exponentially in lmax (even- and odd-degree restrictions
/// to the half interval become numerically dependent around lmax ~ 10), so it
/// is unsuitable as the right-hand side of a large generalized solve;
/// robin_spectrum assembles a same-span orthonormalized basis instead.
num::HermitianMatrix gram_matrix(const GalerkinBasis& basis);

/// Dirichlet-integral matrix by the Green identity: l(l+1) gram plus the
/// equator term 2 pi * (normal coefficient) * (trace coefficient). Assembly in
/// both orders agrees in exact arithmetic; the deviation is asserted below
/// 1e-9 relative and symmetrized away.
num::HermitianMatrix stiffness_matrix(const GalerkinBasis& basis);

/// Equator form int sigma |trace|^2: nonzero on neumann x neumann pairs only,
/// entry = sigma_hat_{m_row - m_col} * t_row * t_col * 2 pi.
num::HermitianMatrix boundary_matrix(const GalerkinBasis& basis, const boundary::BoundarySymbol& sigma);

struct GalerkinSystem {
  GalerkinBasis basis;
  num::HermitianMatrix gram;
  num::HermitianMatrix stiffness;
  num::HermitianMatrix boundary;
};

GalerkinSystem build_system(int lmax, const boundary::BoundarySymbol& sigma);

/// Ascending eigenvalues of the truncated Robin form. Internally each coupled
/// block of azimuthal indices is re-assembled over polynomials orthonormalized
/// on the half interval (the span is identical, so in exact arithmetic the
/// spectrum equals the one of (stiffness + boundary, gram)); this keeps the
/// generalized solve well conditioned at any lmax. Eigenvalues above roughly
/// (lmax/2)^2 carry truncation error and should not be trusted.
std::vector<double> robin_spectrum(const boundary::BoundarySymbol& sigma, int lmax);

struct WindowCount {
  int ell = 0;
  int total = 0;    // eigenvalues assigned to this cluster and inside Lambda_ell
  int moved = 0;    // |lambda - l(l+1)| > unmoved_tol
  int unmoved = 0;  // at l(l+1) within unmoved_tol
};

struct WindowReport {
  std::vector<WindowCount> counts;
  std::vector<double> stragglers;  // below cutoff but outside every window
  double cutoff = 0;
};

/// Counts eigenvalues below `trusted_cutoff` per cluster window
/// Lambda_ell = (l(l+1) - C sqrt(l+1), l(l+1) + C sqrt(l+1)). Eigenvalues are
/// assigned to the nearest cluster point first (the windows overlap at small
/// ell for moderate C), then tested for window membership.
WindowReport cluster_window_counts(const std::vector<double>& spectrum, double C, int ell_lo,
                                   int ell_hi, double trusted_cutoff, double unmoved_tol = 1e-6);

struct OddConstruction {
  int dimension = 0;               // number of constructed eigenfunctions = ell - d
  std::vector<double> residuals;   // L2(equator) residual of sigma F + dF/dn per function
  double scale = 1.0;              // coefficient scale the residuals are measured against
};

/// Constructive eigenfunction basis for odd trigonometric-polynomial sigma:
/// for each admissible f_N = e^{i m phi} the Neumann harmonic with that trace
/// is corrected by the Dirichlet harmonic whose normal derivative cancels
/// sigma f_N, giving an exact Robin eigenfunction with eigenvalue l(l+1).
OddConstruction odd_eigenspace_construction(const boundary::BoundarySymbol& sigma, int ell);

/// CSV rows "index,eigenvalue,cluster_ell,gap" for a spectrum dump.
std::string spectrum_csv(const std::vector<double>& spectrum);

}  // namespace hemirobin::galerkin

#endif
