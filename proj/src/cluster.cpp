#include "hemirobin/cluster.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace hemirobin::cluster {

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<int> even_parity_basis(int ell) {
  std::vector<int> basis;
  basis.reserve(ell + 1);
  for (int m = -ell; m <= ell; m += 2) basis.push_back(m);
  return basis;
}
}  // namespace

ClusterMatrix build_cluster_matrix(const boundary::BoundarySymbol& sigma, int ell) {
  if (ell < 0) throw std::domain_error("build_cluster_matrix: ell >= 0 required");
  ClusterMatrix cm;
  cm.ell = ell;
  cm.basis = even_parity_basis(ell);
  harm::TraceAmplitudes t = harm::trace_amplitudes(ell);
  const std::size_t n = cm.basis.size();
  cm.matrix = num::HermitianMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = t.at_a(cm.basis[i]);
    for (std::size_t j = i; j < n; ++j)
      cm.matrix.set(i, j, ai * sigma.coeff(cm.basis[i] - cm.basis[j]) * t.at_a(cm.basis[j]));
  }
  return cm;
}

GapSpectrum gap_spectrum(const boundary::BoundarySymbol& sigma, int ell) {
  ClusterMatrix cm = build_cluster_matrix(sigma, ell);
  GapSpectrum g;
  g.ell = ell;
  g.method = SpectrumMethod::cluster_operator;
  g.tolerance = 1e-10 * std::max(1.0, cm.matrix.max_abs() * double(cm.matrix.dim()));
  g.gaps = num::hermitian_eigenvalues(cm.matrix);
  return g;
}

double cluster_trace(const boundary::BoundarySymbol& sigma, int ell) {
  harm::TraceAmplitudes t = harm::trace_amplitudes(ell);
  double sum_a2 = 0;
  for (double a : t.a) sum_a2 += a * a;
  return sigma.coeff(0).real() * sum_a2;
}

SandwichSpectra sandwich_spectra(const boundary::BoundarySymbol& sigma, int ell, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("sandwich_spectra: epsilon > 0 required");
  const int d4 = std::max(4 * sigma.degree(), 4);
  auto run = [&](int deg) {
    boundary::BoundarySymbol abs_s = boundary::abs_symbol(sigma, deg);
    boundary::BoundarySymbol lo = boundary::axpy(1.0, sigma, -epsilon, abs_s);
    boundary::BoundarySymbol hi = boundary::axpy(1.0, sigma, epsilon, abs_s);
    return std::pair<GapSpectrum, GapSpectrum>{gap_spectrum(lo, ell), gap_spectrum(hi, ell)};
  };
  auto [lo4, hi4] = run(d4);
  auto [lo8, hi8] = run(2 * d4);
  double scale = std::max(1.0, std::max(std::abs(hi4.gaps.back()), std::abs(hi4.gaps.front())));
  for (std::size_t k = 0; k < lo4.gaps.size(); ++k) {
    if (std::abs(lo4.gaps[k] - lo8.gaps[k]) > 1e-6 * scale ||
        std::abs(hi4.gaps[k] - hi8.gaps[k]) > 1e-6 * scale)
      throw std::runtime_error("sandwich_spectra: |sigma| truncation degree insufficient");
  }
  for (std::size_t k = 0; k < lo4.gaps.size(); ++k) {
    if (lo4.gaps[k] > hi4.gaps[k] + 1e-12 * scale)
      throw std::runtime_error("sandwich_spectra: lower/upper ordering violated");
  }
  return {lo4, hi4};
}

double SmoothWindow::operator()(double xi) const {
  double u = xi / radius;
  if (std::abs(u) >= 1.0) return 0.0;
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - u * u));
}

ModelTrace model_operator_trace(const SmoothWindow& window, const boundary::BoundarySymbol& sigma,
                                int ell, int power) {
  if (power < 1) throw std::invalid_argument("model_operator_trace: power >= 1 required");
  if (ell < 2) throw std::invalid_argument("model_operator_trace: ell >= 2 required");
  std::vector<int> basis = even_parity_basis(ell);
  const std::size_t n = basis.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = (std::abs(basis[i]) <= ell - 2) ? window(double(basis[i]) / double(ell)) : 0.0;

  num::HermitianMatrix t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      t.set(i, j, w[i] * sigma.coeff(basis[i] - basis[j]) * w[j]);

  // Tr(T^k) via repeated multiplication (k is small)
  std::vector<num::cplx> pow_mat(t.data());
  const std::vector<num::cplx>& base = t.data();
  for (int p = 1; p < power; ++p) {
    std::vector<num::cplx> next(n * n, num::cplx(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        num::cplx aik = pow_mat[i * n + k];
        if (aik == num::cplx(0)) continue;
        for (std::size_t j = 0; j < n; ++j) next[i * n + j] += aik * base[k * n + j];
      }
    pow_mat.swap(next);
  }
  num::cplx tr = 0;
  for (std::size_t i = 0; i < n; ++i) tr += pow_mat[i * n + i];

  ModelTrace out;
  out.numeric = tr.real() / double(ell + 1);

  // limit: (1/4pi) int_{-pi}^{pi} int_{-1}^{1} |w(xi)|^{2k} sigma_even(phi)^k
  boundary::BoundarySymbol se = boundary::even_part(sigma);
  auto integrate = [&](int n_xi, int n_phi) {
    num::QuadratureRule qx = num::gauss_legendre(n_xi);
    num::QuadratureRule qp = num::uniform_periodic(n_phi);
    double xi_sum = 0;
    for (int i = 0; i < n_xi; ++i)
      xi_sum += qx.weights[i] * std::pow(window(qx.nodes[i]), 2 * power);
    double phi_sum = 0;
    for (std::size_t j = 0; j < qp.nodes.size(); ++j)
      phi_sum += qp.weights[j] * std::pow(boundary::evaluate(se, qp.nodes[j]), power);
    return xi_sum * phi_sum / (4.0 * kPi);
  };
  double v1 = integrate(200, 256);
  double v2 = integrate(400, 512);
  if (std::abs(v2 - v1) > 1e-8 * std::max(1.0, std::abs(v2)))
    throw std::runtime_error("model_operator_trace: limit quadrature failed to converge");
  out.limit = v2;
  return out;
}

double commutator_hs_norm(const SmoothWindow& window, const boundary::BoundarySymbol& sigma, int ell) {
  if (ell < 2) throw std::invalid_argument("commutator_hs_norm: ell >= 2 required");
  const int d = sigma.degree();
  auto wcoef = [&](int m) {
    return (std::abs(m) <= ell - 2 && (ell - m) % 2 == 0) ? window(double(m) / double(ell)) : 0.0;
  };
  // entry (m', m) of [M sigma, C w_l] is c_{m'-m} (w(m) - w(m')); the band
  // |m|, |m'| <= l + d already contains every nonzero entry.
  double s2 = 0;
  for (int m = -(ell + d); m <= ell + d; ++m) {
    for (int k = -d; k <= d; ++k) {
      int mp = m + k;
      if (mp < -(ell + d) || mp > ell + d) continue;
      double diff = wcoef(m) - wcoef(mp);
      s2 += std::norm(sigma.coeff(k)) * diff * diff;
    }
  }
  return std::sqrt(s2);
}

std::string gap_spectrum_csv(const std::vector<GapSpectrum>& spectra) {
  std::string out = "ell,k,gap\n";
  char buf[64];
  for (const GapSpectrum& g : spectra)
    for (std::size_t k = 0; k < g.gaps.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%d,%zu,%.17g\n", g.ell, k + 1, g.gaps[k]);
      out += buf;
    }
  return out;
}

}  // namespace hemirobin::cluster
