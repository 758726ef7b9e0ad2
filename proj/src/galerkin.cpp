#include "hemirobin/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

#include "hemirobin/harmonics.hpp"

namespace hemirobin::galerkin {

namespace {

constexpr double kPi = std::numbers::pi;
using num::cplx;

int cs_sign(int ell, int m) {  // (-1)^{(l+m)/2} for l-m even
  return ((ell + m) / 2) % 2 == 0 ? 1 : -1;
}

// Sign-normalized half-interval profile values R_{l,m} = s * Yhat_{l,m} for a
// whole m-column; Neumann-type degrees get the Condon-Shortley phase so that
// R(0) = A_{l,m} > 0, Dirichlet-type degrees stay as they come.
std::vector<double> profile_column(int lmax, int m, double x) {
  std::vector<double> col = harm::norm_legendre_column(lmax, m, x);
  for (int l = std::abs(m); l <= lmax; ++l)
    if ((l - m) % 2 == 0 && cs_sign(l, m) < 0) col[l - std::abs(m)] = -col[l - std::abs(m)];
  return col;
}

}  // namespace

GalerkinBasis make_basis(int lmax) {
  if (lmax < 0) throw std::invalid_argument("make_basis: lmax >= 0 required");
  if (lmax > 60) throw std::invalid_argument("make_basis: lmax <= 60 for the harmonic-basis matrices");
  GalerkinBasis b;
  b.lmax = lmax;
  for (int m = -lmax; m <= lmax; ++m)
    for (int l = std::abs(m); l <= lmax; ++l)
      b.entries.push_back({l, m, (l - m) % 2 == 0});
  return b;
}

num::HermitianMatrix gram_matrix(const GalerkinBasis& basis) {
  const std::size_t n = basis.entries.size();
  num::HermitianMatrix g(n);
  // per m-column: evaluate all profiles at Gauss-Legendre nodes on [0,1];
  // integrands are polynomials of degree <= 2*lmax, so lmax+2 nodes are exact
  num::QuadratureRule q = num::gauss_legendre(basis.lmax + 2);
  std::size_t row = 0;
  while (row < n) {
    const int m = basis.entries[row].m;
    std::size_t count = 0;
    while (row + count < n && basis.entries[row + count].m == m) ++count;
    const int am = std::abs(m);
    std::vector<std::vector<double>> vals(q.nodes.size());
    for (std::size_t t = 0; t < q.nodes.size(); ++t)
      vals[t] = profile_column(basis.lmax, m, 0.5 * (q.nodes[t] + 1.0));
    for (std::size_t i = 0; i < count; ++i) {
      const BasisEntry& ei = basis.entries[row + i];
      for (std::size_t j = i; j < count; ++j) {
        const BasisEntry& ej = basis.entries[row + j];
        if ((ei.ell - ej.ell) % 2 == 0) {
          g.set(row + i, row + j, i == j ? 1.0 : 0.0);
          continue;
        }
        double acc = 0;
        for (std::size_t t = 0; t < q.nodes.size(); ++t)
          acc += 0.5 * q.weights[t] * vals[t][ei.ell - am] * vals[t][ej.ell - am];
        g.set(row + i, row + j, acc);
      }
    }
    row += count;
  }
  return g;
}

namespace {

// trace coefficient (neumann) and normal-derivative coefficient (dirichlet)
// of each basis entry, from the closed-form amplitude tables
struct EquatorCoefficients {
  std::vector<double> trace;   // A_{l,m}/sqrt(2 pi) on neumann entries, 0 otherwise
  std::vector<double> normal;  // B_{l,m} on dirichlet entries, 0 otherwise
};

EquatorCoefficients equator_coefficients(const GalerkinBasis& basis) {
  EquatorCoefficients c;
  const std::size_t n = basis.entries.size();
  c.trace.assign(n, 0.0);
  c.normal.assign(n, 0.0);
  std::map<int, harm::TraceAmplitudes> amp;
  for (std::size_t i = 0; i < n; ++i) {
    const BasisEntry& e = basis.entries[i];
    auto it = amp.find(e.ell);
    if (it == amp.end()) it = amp.emplace(e.ell, harm::trace_amplitudes(e.ell)).first;
    if (e.neumann)
      c.trace[i] = it->second.at_a(e.m) / std::sqrt(2.0 * kPi);
    else
      c.normal[i] = it->second.at_b(e.m);
  }
  return c;
}

}  // namespace

num::HermitianMatrix stiffness_matrix(const GalerkinBasis& basis) {
  const std::size_t n = basis.entries.size();
  num::HermitianMatrix g = gram_matrix(basis);
  EquatorCoefficients c = equator_coefficients(basis);
  // raw(i,j) = form(phi_j, phi_i) = l_j(l_j+1) gram(i,j) + 2 pi n_j t_i
  std::vector<double> raw(n * n, 0.0);
  double scale = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const BasisEntry& ej = basis.entries[j];
      double v = double(ej.ell) * (ej.ell + 1) * g(i, j).real();
      if (basis.entries[i].m == ej.m) v += 2.0 * kPi * c.normal[j] * c.trace[i];
      raw[i * n + j] = v;
      scale = std::max(scale, std::abs(v));
    }
  // Green's identity makes raw symmetric in exact arithmetic
  double dev = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dev = std::max(dev, std::abs(raw[i * n + j] - raw[j * n + i]));
  if (dev > 1e-9 * std::max(1.0, scale))
    throw std::runtime_error("stiffness_matrix: assembly directions disagree (Green identity violated)");
  num::HermitianMatrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s.set(i, j, 0.5 * (raw[i * n + j] + raw[j * n + i]));
  return s;
}

num::HermitianMatrix boundary_matrix(const GalerkinBasis& basis, const boundary::BoundarySymbol& sigma) {
  const std::size_t n = basis.entries.size();
  EquatorCoefficients c = equator_coefficients(basis);
  num::HermitianMatrix b(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.trace[i] == 0.0) continue;
    for (std::size_t j = i; j < n; ++j) {
      if (c.trace[j] == 0.0) continue;
      b.set(i, j, 2.0 * kPi * sigma.coeff(basis.entries[i].m - basis.entries[j].m) * c.trace[i] * c.trace[j]);
    }
  }
  return b;
}

GalerkinSystem build_system(int lmax, const boundary::BoundarySymbol& sigma) {
  GalerkinSystem sys;
  sys.basis = make_basis(lmax);
  sys.gram = gram_matrix(sys.basis);
  sys.stiffness = stiffness_matrix(sys.basis);
  sys.boundary = boundary_matrix(sys.basis, sigma);
  return sys;
}

// ---------------------------------------------------------------------------
// Production solver: same span, orthonormalized per azimuthal block.

namespace {

// Polynomials orthonormal w.r.t. the weight (1-x^2)^|m| on [0,1] (Stieltjes
// recurrence on an exact Gauss-Legendre grid), with boundary values at x = 0.
// The functions f_j = (1-x^2)^{|m|/2} q_j then span exactly the same space as
// the degree-<=lmax harmonic profiles for this m.
struct OrthoBlock {
  int m_abs = 0;
  int nfun = 0;
  std::vector<double> x, w;          // quadrature on [0,1]
  std::vector<std::vector<double>> q;   // values q_j at nodes
  std::vector<std::vector<double>> dq;  // derivatives q_j' at nodes
  std::vector<double> q0;            // q_j(0)
  std::vector<double> stiffness;     // n x n Legendre-form matrix
  std::vector<double> gram;          // n x n (near identity)
};

OrthoBlock make_ortho_block(int m_abs, int nfun) {
  OrthoBlock b;
  b.m_abs = m_abs;
  b.nfun = nfun;
  const int nq = nfun + m_abs + 4;
  num::QuadratureRule gl = num::gauss_legendre(nq);
  b.x.resize(nq);
  b.w.resize(nq);
  for (int i = 0; i < nq; ++i) {
    b.x[i] = 0.5 * (gl.nodes[i] + 1.0);
    b.w[i] = 0.5 * gl.weights[i];
  }
  std::vector<double> W(nq);
  for (int i = 0; i < nq; ++i) W[i] = b.w[i] * std::pow(1.0 - b.x[i] * b.x[i], m_abs);

  auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0;
    for (int i = 0; i < nq; ++i) s += W[i] * u[i] * v[i];
    return s;
  };

  b.q.assign(nfun, std::vector<double>(nq, 0.0));
  b.dq.assign(nfun, std::vector<double>(nq, 0.0));
  b.q0.assign(nfun, 0.0);

  // orthonormal three-term recurrence:
  //   q_{j+1} = ((x - a_j) q_j - beta_j q_{j-1}) / beta_{j+1}
  std::vector<double> p(nq, 1.0), dp(nq, 0.0), pm(nq, 0.0), dpm(nq, 0.0);
  double p0 = 1.0, dp0 = 0.0, pm0 = 0.0, dpm0 = 0.0;
  double beta = std::sqrt(dot(p, p));
  for (int i = 0; i < nq; ++i) p[i] /= beta;
  p0 /= beta;
  beta = 0.0;  // beta_0 multiplies the (absent) q_{-1}
  for (int j = 0; j < nfun; ++j) {
    b.q[j] = p;
    b.dq[j] = dp;
    b.q0[j] = p0;
    if (j + 1 == nfun) break;
    std::vector<double> xp(nq);
    for (int i = 0; i < nq; ++i) xp[i] = b.x[i] * p[i];
    const double a = dot(xp, p);
    std::vector<double> r(nq), dr(nq);
    for (int i = 0; i < nq; ++i) {
      r[i] = (b.x[i] - a) * p[i] - beta * pm[i];
      dr[i] = p[i] + (b.x[i] - a) * dp[i] - beta * dpm[i];
    }
    double r0 = -a * p0 - beta * pm0;
    double dr0 = p0 - a * dp0 - beta * dpm0;
    const double nb = std::sqrt(dot(r, r));
    for (int i = 0; i < nq; ++i) {
      r[i] /= nb;
      dr[i] /= nb;
    }
    r0 /= nb;
    dr0 /= nb;
    pm.swap(p);
    dpm.swap(dp);
    pm0 = p0;
    dpm0 = dp0;
    p = std::move(r);
    dp = std::move(dr);
    p0 = r0;
    dp0 = dr0;
    beta = nb;
  }

  // Legendre-form matrix over f_j = (1-x^2)^{m/2} q_j:
  //   m >= 1: int (1-x^2)^{m-1} [ ((1-x^2) q' - m x q)^2-coupling + m^2 q q ]
  //   m = 0 : int (1-x^2) q' q'
  b.stiffness.assign(std::size_t(nfun) * nfun, 0.0);
  b.gram.assign(std::size_t(nfun) * nfun, 0.0);
  for (int i = 0; i < nfun; ++i)
    for (int j = i; j < nfun; ++j) {
      double acc = 0, gacc = 0;
      for (int t = 0; t < nq; ++t) {
        const double om = 1.0 - b.x[t] * b.x[t];
        double v;
        if (m_abs >= 1) {
          const double gi = om * b.dq[i][t] - m_abs * b.x[t] * b.q[i][t];
          const double gj = om * b.dq[j][t] - m_abs * b.x[t] * b.q[j][t];
          v = std::pow(om, m_abs - 1) * (gi * gj + double(m_abs) * m_abs * b.q[i][t] * b.q[j][t]);
        } else {
          v = om * b.dq[i][t] * b.dq[j][t];
        }
        acc += b.w[t] * v;
        gacc += W[t] * b.q[i][t] * b.q[j][t];
      }
      b.stiffness[i * nfun + j] = b.stiffness[j * nfun + i] = acc;
      b.gram[i * nfun + j] = b.gram[j * nfun + i] = gacc;
    }
  return b;
}

}  // namespace

std::vector<double> robin_spectrum(const boundary::BoundarySymbol& sigma, int lmax) {
  if (lmax < 4 + 2 * sigma.degree())
    throw std::invalid_argument("robin_spectrum: lmax >= 4 + 2*degree(sigma) required");

  // coupling classes of azimuthal indices under m -> m + k for sigma_hat_k != 0
  std::vector<int> cls(2 * lmax + 1);
  for (int i = 0; i <= 2 * lmax; ++i) cls[i] = i;
  std::function<int(int)> find = [&](int i) { return cls[i] == i ? i : cls[i] = find(cls[i]); };
  for (int k = -sigma.degree(); k <= sigma.degree(); ++k) {
    if (k == 0 || sigma.coeff(k) == cplx(0)) continue;
    for (int m = -lmax; m <= lmax; ++m) {
      int mp = m + k;
      if (mp < -lmax || mp > lmax) continue;
      cls[find(m + lmax)] = find(mp + lmax);
    }
  }
  std::map<int, std::vector<int>> classes;  // representative -> member m's
  for (int m = -lmax; m <= lmax; ++m) classes[find(m + lmax)].push_back(m);

  // shared per-|m| blocks
  std::vector<OrthoBlock> blocks(lmax + 1);
  for (int am = 0; am <= lmax; ++am) blocks[am] = make_ortho_block(am, lmax - am + 1);

  std::vector<double> all;
  all.reserve(std::size_t(lmax + 1) * (lmax + 1));
  for (const auto& [rep, ms] : classes) {
    std::vector<std::size_t> offset(ms.size());
    std::size_t total = 0;
    for (std::size_t bi = 0; bi < ms.size(); ++bi) {
      offset[bi] = total;
      total += std::size_t(lmax - std::abs(ms[bi]) + 1);
    }
    num::HermitianMatrix A(total), G(total);
    for (std::size_t bi = 0; bi < ms.size(); ++bi) {
      const OrthoBlock& B = blocks[std::abs(ms[bi])];
      const int n = B.nfun;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          A.set(offset[bi] + i, offset[bi] + j, B.stiffness[i * n + j]);
          G.set(offset[bi] + i, offset[bi] + j, B.gram[i * n + j]);
        }
    }
    // equator coupling: entry(i, j) += sigma_hat_{m_i - m_j} q_i(0) q_j(0)
    for (std::size_t bi = 0; bi < ms.size(); ++bi)
      for (std::size_t bj = 0; bj < ms.size(); ++bj) {
        cplx c = sigma.coeff(ms[bi] - ms[bj]);
        if (c == cplx(0)) continue;
        const OrthoBlock& Bi = blocks[std::abs(ms[bi])];
        const OrthoBlock& Bj = blocks[std::abs(ms[bj])];
        for (int i = 0; i < Bi.nfun; ++i)
          for (int j = 0; j < Bj.nfun; ++j) {
            std::size_t r = offset[bi] + i, cidx = offset[bj] + j;
            if (r > cidx) continue;  // Hermitian: fill upper triangle once
            A.add(r, cidx, c * Bi.q0[i] * Bj.q0[j]);
          }
      }
    std::vector<double> ev = num::generalized_eigen(A, G).eigenvalues;
    all.insert(all.end(), ev.begin(), ev.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

WindowReport cluster_window_counts(const std::vector<double>& spectrum, double C, int ell_lo,
                                   int ell_hi, double trusted_cutoff, double unmoved_tol) {
  if (!(C > 0)) throw std::invalid_argument("cluster_window_counts: C > 0 required");
  WindowReport rep;
  rep.cutoff = trusted_cutoff;
  std::map<int, WindowCount> counts;
  for (int l = ell_lo; l <= ell_hi; ++l) counts[l] = {l, 0, 0, 0};
  for (double v : spectrum) {
    if (v >= trusted_cutoff) continue;
    // nearest cluster point l(l+1)
    int best = std::max(0, int(std::floor(0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * v))))));
    double bestd = std::abs(v - double(best) * (best + 1));
    if (std::abs(v - double(best + 1) * (best + 2)) < bestd) {
      ++best;
      bestd = std::abs(v - double(best) * (best + 1));
    }
    const bool inside = bestd < C * std::sqrt(double(best) + 1.0);
    if (!inside) {
      rep.stragglers.push_back(v);
      continue;
    }
    auto it = counts.find(best);
    if (it == counts.end()) continue;  // outside requested range
    ++it->second.total;
    if (bestd <= unmoved_tol)
      ++it->second.unmoved;
    else
      ++it->second.moved;
  }
  for (auto& [l, wc] : counts) rep.counts.push_back(wc);
  return rep;
}

OddConstruction odd_eigenspace_construction(const boundary::BoundarySymbol& sigma, int ell) {
  if (!sigma.is_odd()) throw std::invalid_argument("odd_eigenspace_construction: sigma must be odd");
  int d = 0;
  for (int k = 1; k <= sigma.degree(); ++k)
    if (sigma.coeff(k) != cplx(0)) d = k;
  if (d == 0 || d % 2 == 0)
    throw std::invalid_argument("odd_eigenspace_construction: leading odd degree required");
  if (ell <= d) throw std::invalid_argument("odd_eigenspace_construction: ell > d required");

  harm::TraceAmplitudes t = harm::trace_amplitudes(ell);
  OddConstruction out;
  out.residuals.reserve(ell - d);

  for (int m = -(ell - d - 1); m <= ell - d - 1; ++m) {
    if ((ell - m) % 2 != 0) continue;
    // coefficients of F over the degree-ell harmonics: u[mm] for mm in [-l, l];
    // the unit basis function has trace coefficient A/sqrt(2 pi), so this
    // scaling gives trace(F_N) = e^{i m phi} exactly
    std::vector<cplx> u(2 * ell + 1, cplx(0));
    u[m + ell] = std::sqrt(2.0 * kPi) / t.at_a(m);
    double scale = 1.0;
    for (int k = -d; k <= d; k += 2) {
      cplx c = sigma.coeff(k);
      if (c == cplx(0)) continue;
      int mp = m + k;
      double b = t.at_b(mp);
      if (b == 0.0) throw std::runtime_error("odd_eigenspace_construction: vanishing B amplitude");
      u[mp + ell] = -c / b;
      scale = std::max(scale, std::abs(c));
    }
    // residual coefficients of sigma * trace(F) + normal(F) over e^{i k phi}
    double res2 = 0;
    for (int k = -(ell + d); k <= ell + d; ++k) {
      cplx r = 0;
      for (int j = -d; j <= d; ++j) {
        cplx c = sigma.coeff(j);
        if (c == cplx(0)) continue;
        int mm = k - j;
        if (mm < -ell || mm > ell || (ell - mm) % 2 != 0) continue;
        r += c * u[mm + ell] * (t.at_a(mm) / std::sqrt(2.0 * kPi));
      }
      if (k >= -ell && k <= ell && (ell - k) % 2 != 0) r += u[k + ell] * t.at_b(k);
      res2 += std::norm(r);
    }
    out.residuals.push_back(std::sqrt(2.0 * kPi * res2));
    out.scale = std::max(out.scale, scale);
    ++out.dimension;
  }
  return out;
}

std::string spectrum_csv(const std::vector<double>& spectrum) {
  std::string out = "index,eigenvalue,cluster_ell,gap\n";
  char buf[96];
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    double v = spectrum[i];
    int lstar = std::max(0, int(std::floor(0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * v))))));
    double d0 = std::abs(v - double(lstar) * (lstar + 1));
    double d1 = std::abs(v - double(lstar + 1) * (lstar + 2));
    if (d1 < d0) ++lstar;
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%d,%.17g\n", i + 1, v, lstar,
                  v - double(lstar) * (lstar + 1));
    out += buf;
  }
  return out;
}

}  // namespace hemirobin::galerkin
