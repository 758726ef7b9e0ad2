#include "hemirobin/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hemirobin/numerics.hpp"

namespace hemirobin::harm {

namespace {

constexpr double kPi = std::numbers::pi;
using num::log_gamma;

// sign of sin(pi*(l+m)/2) for l+m odd: (-1)^{(l+m-1)/2}
int deriv_sign(int ell, int m) { return ((ell + m - 1) / 2) % 2 == 0 ? 1 : -1; }

}  // namespace

double gamma_ratio(double x) {
  if (x < 0.0) throw std::domain_error("gamma_ratio: requires x >= 0");
  return std::exp(log_gamma(x / 2.0 + 0.5) - log_gamma(x / 2.0 + 1.0));
}

TraceAmplitudes trace_amplitudes(int ell) {
  if (ell < 0) throw std::domain_error("trace_amplitudes: ell >= 0 required");
  TraceAmplitudes t;
  t.ell = ell;
  t.a.assign(2 * ell + 1, 0.0);
  t.b.assign(2 * ell + 1, 0.0);
  for (int m = -ell; m <= ell; ++m) {
    if ((ell - m) % 2 == 0) {
      // A^2 = (2l+1)/pi * gamma(l-m) gamma(l+m), positive root
      double a2 = (2.0 * ell + 1.0) / kPi * gamma_ratio(double(ell - m)) * gamma_ratio(double(ell + m));
      t.a[m + ell] = std::sqrt(a2);
    } else {
      // B = -sqrt((2l+1)/(2 pi) (l-m)!/(l+m)!) * d/dx P_l^m(0), all in logs:
      // |d/dx P_l^m(0)| = 2^{m+1}/sqrt(pi) * Gamma((l+m)/2+1)/Gamma((l-m+1)/2)
      double log_norm = 0.5 * (std::log(2.0 * ell + 1.0) - std::log(2.0 * kPi) +
                               log_gamma(double(ell - m) + 1.0) - log_gamma(double(ell + m) + 1.0));
      double log_deriv = (m + 1) * std::log(2.0) - 0.5 * std::log(kPi) +
                         log_gamma(0.5 * (ell + m) + 1.0) - log_gamma(0.5 * (ell - m + 1));
      double mag = std::exp(log_norm + log_deriv);
      if (!std::isfinite(mag)) throw std::runtime_error("trace_amplitudes: non-finite B");
      t.b[m + ell] = -double(deriv_sign(ell, m)) * mag;
    }
  }
  for (double v : t.a)
    if (!std::isfinite(v)) throw std::runtime_error("trace_amplitudes: non-finite A");
  return t;
}

std::vector<double> norm_legendre_column(int lmax, int m, double x) {
  const int am = std::abs(m);
  if (lmax < am) throw std::invalid_argument("norm_legendre_column: lmax < |m|");
  if (std::abs(x) > 1.0) throw std::domain_error("norm_legendre_column: |x| <= 1 required");
  std::vector<double> out(lmax - am + 1, 0.0);
  // seed: Yhat_mm = (-1)^m sqrt(2m+1) * prod sqrt((2j-1)/(2j)) * (1-x^2)^{m/2}
  double c = std::sqrt(2.0 * am + 1.0);
  for (int j = 1; j <= am; ++j) c *= std::sqrt((2.0 * j - 1.0) / (2.0 * j));
  double pmm = (am % 2 ? -c : c) * std::pow(std::max(0.0, 1.0 - x * x), 0.5 * am);
  out[0] = pmm;
  if (lmax > am) out[1] = std::sqrt(2.0 * am + 3.0) * x * pmm;
  for (int l = am + 2; l <= lmax; ++l) {
    double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(am) * am));
    double b = std::sqrt(((double(l) - 1) * (l - 1) - double(am) * am) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
    out[l - am] = a * (x * out[l - am - 1] - b * out[l - am - 2]);
  }
  if (m < 0 && am % 2) {
    for (double& v : out) v = -v;  // Yhat_{l,-m} = (-1)^m Yhat_{l,m}
  }
  return out;
}

std::vector<double> norm_legendre_derivative_column(int lmax, int m, double x) {
  const int am = std::abs(m);
  if (lmax < am) throw std::invalid_argument("norm_legendre_derivative_column: lmax < |m|");
  if (std::abs(x) > 1.0) throw std::domain_error("norm_legendre_derivative_column: |x| <= 1 required");
  std::vector<double> val(lmax - am + 1, 0.0), der(lmax - am + 1, 0.0);
  double c = std::sqrt(2.0 * am + 1.0);
  for (int j = 1; j <= am; ++j) c *= std::sqrt((2.0 * j - 1.0) / (2.0 * j));
  double omx2 = std::max(0.0, 1.0 - x * x);
  double pmm = (am % 2 ? -c : c) * std::pow(omx2, 0.5 * am);
  double dmm = 0.0;
  if (am >= 1) {
    // d/dx (1-x^2)^{m/2} = -m x (1-x^2)^{m/2 - 1}; finite away from |x|=1
    dmm = (am % 2 ? -c : c) * (-double(am) * x) * std::pow(omx2, 0.5 * am - 1.0);
  }
  val[0] = pmm;
  der[0] = dmm;
  if (lmax > am) {
    double a1 = std::sqrt(2.0 * am + 3.0);
    val[1] = a1 * x * pmm;
    der[1] = a1 * (pmm + x * dmm);
  }
  for (int l = am + 2; l <= lmax; ++l) {
    double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(am) * am));
    double b = std::sqrt(((double(l) - 1) * (l - 1) - double(am) * am) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
    val[l - am] = a * (x * val[l - am - 1] - b * val[l - am - 2]);
    der[l - am] = a * (val[l - am - 1] + x * der[l - am - 1] - b * der[l - am - 2]);
  }
  if (m < 0 && am % 2) {
    for (double& v : val) v = -v;
    for (double& v : der) v = -v;
  }
  return der;
}

double norm_legendre_at(int ell, int m, double x) {
  return norm_legendre_column(ell, m, x)[ell - std::abs(m)];
}

double legendre_p_at(int ell, int m, double x) {
  const int am = std::abs(m);
  if (am > ell) throw std::invalid_argument("legendre_p_at: |m| <= ell required");
  if (std::abs(x) > 1.0) throw std::domain_error("legendre_p_at: |x| <= 1 required");
  // P = Yhat / sqrt((2l+1)(l-m)!/(l+m)!); extension to m < 0 is already
  // carried by the normalized column.
  double log_norm = 0.5 * (std::log(2.0 * ell + 1.0) + log_gamma(double(ell - m) + 1.0) -
                           log_gamma(double(ell + m) + 1.0));
  return norm_legendre_at(ell, m, x) * std::exp(-log_norm);
}

SymbolSequence symbol(int ell, SymbolKind kind) {
  if (ell < 0) throw std::domain_error("symbol: ell >= 0 required");
  if (kind == SymbolKind::z && ell < 1) throw std::domain_error("symbol: z_ell requires ell >= 1");
  SymbolSequence s;
  s.ell = ell;
  s.kind = kind;
  s.coeffs.assign(2 * ell + 1, 0.0);
  if (kind == SymbolKind::z) {
    for (int m = -ell + 2; m <= ell - 2; ++m) {
      if ((ell - m) % 2) continue;
      double r = double(m) / double(ell);
      s.coeffs[m + ell] = 2.0 / std::sqrt(kPi) * std::pow(1.0 - r * r, -0.25);
    }
    return s;
  }
  TraceAmplitudes t = trace_amplitudes(ell);
  for (int m = -ell; m <= ell; ++m) {
    double a = t.a[m + ell];
    s.coeffs[m + ell] = (kind == SymbolKind::x) ? a : a * a;
  }
  return s;
}

AmplitudeDiagnostics amplitude_diagnostics(int ell) {
  if (ell < 2) throw std::domain_error("amplitude_diagnostics: ell >= 2 required");
  TraceAmplitudes t = trace_amplitudes(ell);
  AmplitudeDiagnostics d;
  for (int m = -ell; m <= ell; ++m) {
    double a2 = t.a[m + ell] * t.a[m + ell];
    d.sum_a2 += a2;
    d.sup_a2 = std::max(d.sup_a2, a2);
    if (std::abs(m) <= ell - 1 && (ell - m) % 2 == 0) {
      double r = double(m) / double(ell);
      d.l1_deviation += std::abs(a2 - 4.0 / kPi * std::pow(1.0 - r * r, -0.5));
    }
  }
  return d;
}

double resolvent_coefficient_bound(int ell, double lambda, int k_max) {
  if (k_max < 4 * ell) throw std::invalid_argument("resolvent_coefficient_bound: k_max >= 4*ell required");
  for (int k = 0; k <= k_max; ++k) {
    if (std::abs(double(k) * (k + 1) - lambda) < 1e-9 * std::max(1.0, lambda))
      throw std::domain_error("resolvent_coefficient_bound: lambda hits a Neumann eigenvalue");
  }
  // A_{k,m}^2 tabulated by gamma ratios; the sup over m of the truncated sums.
  double sup = 0.0;
  for (int m = -k_max; m <= k_max; ++m) {
    double s = 0.0;
    int k0 = std::max(std::abs(m), 0);
    if ((k0 - m) % 2) ++k0;
    for (int k = k0; k <= k_max; k += 2) {
      if (k == ell) continue;
      double a2 = (2.0 * k + 1.0) / kPi * gamma_ratio(double(k - m)) * gamma_ratio(double(k + m));
      s += a2 / (double(k) * (k + 1) - lambda);
    }
    sup = std::max(sup, std::abs(s));
  }
  return sup;
}

}  // namespace hemirobin::harm
