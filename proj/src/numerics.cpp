#include "hemirobin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <type_traits>

namespace hemirobin::num {

namespace {

constexpr double kPi = std::numbers::pi;

// Jacobi handles everything up to this dimension; beyond it real matrices go
// through tridiagonalization + QL, which is an order of magnitude faster.
constexpr std::size_t kJacobiMaxDim = 512;

}  // namespace

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix HermitianMatrix::from_dense(std::size_t dim, std::span<const cplx> entries) {
  if (entries.size() != dim * dim) throw std::invalid_argument("from_dense: size mismatch");
  HermitianMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      cplx v = 0.5 * (entries[i * dim + j] + std::conj(entries[j * dim + i]));
      if (i == j) v = cplx(v.real(), 0.0);
      m.a_[i * dim + j] = v;
      m.a_[j * dim + i] = std::conj(v);
    }
  if (!m.all_finite()) throw std::invalid_argument("from_dense: non-finite entry");
  return m;
}

void HermitianMatrix::set(std::size_t i, std::size_t j, cplx v) {
  if (i == j) v = cplx(v.real(), 0.0);
  a_[i * n_ + j] = v;
  a_[j * n_ + i] = std::conj(v);
}

bool HermitianMatrix::all_finite() const {
  for (const cplx& v : a_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

bool HermitianMatrix::is_real() const {
  for (const cplx& v : a_)
    if (v.imag() != 0.0) return false;
  return true;
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double HermitianMatrix::max_abs() const {
  double s = 0;
  for (const cplx& v : a_) s = std::max(s, std::abs(v));
  return s;
}

double HermitianMatrix::trace() const {
  double s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += a_[i * n_ + i].real();
  return s;
}

// ---------------------------------------------------------------------------
// log_gamma (Lanczos, g = 607/128, 15 terms)

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  static const double g = 607.0 / 128.0;
  static const double c[15] = {
      0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
      14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
      0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
      -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
      0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};
  const double z = x - 1.0;
  double series = c[0];
  for (int k = 1; k < 15; ++k) series += c[k] / (z + k);
  const double t = z + g + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi, templated over double (real symmetric) and cplx (Hermitian).
// Convergence: off-diagonal Frobenius norm <= 1e-12 * ||M||_F of the input,
// at most 30 sweeps; exceeding the sweep budget is an error.

namespace {

inline double sqr_abs(double v) { return v * v; }
inline double sqr_abs(const cplx& v) { return std::norm(v); }
inline double conj_or_id(double v) { return v; }
inline cplx conj_or_id(const cplx& v) { return std::conj(v); }

template <typename T>
void jacobi_cyclic(std::vector<T>& a, std::size_t n, std::vector<T>* vecs) {
  if (vecs) {
    vecs->assign(n * n, T(0));
    for (std::size_t i = 0; i < n; ++i) (*vecs)[i * n + i] = T(1);
  }
  double norm0 = 0;
  for (const T& v : a) norm0 += sqr_abs(v);
  norm0 = std::sqrt(norm0);
  const double thresh = 1e-12 * norm0;

  auto off_norm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * sqr_abs(a[i * n + j]);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 30; ++sweep) {
    if (off_norm() <= thresh) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a[p * n + q];
        const double abs_apq = std::sqrt(sqr_abs(apq));
        if (abs_apq == 0.0) continue;
        const double app = std::real(cplx(a[p * n + p]));
        const double aqq = std::real(cplx(a[q * n + q]));
        // Rotation in the (p,q) plane zeroing a_pq; phase of s follows a_pq.
        const double theta = (aqq - app) / (2.0 * abs_apq);
        const double t =
            (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cr = 1.0 / std::sqrt(t * t + 1.0);
        const T s = apq * T(t * cr / abs_apq);
        const T sc = conj_or_id(s);
        // rows r outside {p,q}: update the (r,p),(r,q) pair and mirror
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const T arp = a[r * n + p];
          const T arq = a[r * n + q];
          a[r * n + p] = arp * T(cr) - arq * sc;
          a[r * n + q] = arp * s + arq * T(cr);
          a[p * n + r] = conj_or_id(a[r * n + p]);
          a[q * n + r] = conj_or_id(a[r * n + q]);
        }
        // 2x2 corner in closed form; the rotation zeroes a_pq exactly
        const double re_gs = std::real(cplx(apq * sc));
        a[p * n + p] = T(cr * cr * app + (1.0 - cr * cr) * aqq - 2.0 * cr * re_gs);
        a[q * n + q] = T((1.0 - cr * cr) * app + cr * cr * aqq + 2.0 * cr * re_gs);
        a[p * n + q] = T(0);
        a[q * n + p] = T(0);
        if (vecs) {
          std::vector<T>& v = *vecs;
          for (std::size_t r = 0; r < n; ++r) {
            const T vrp = v[r * n + p];
            const T vrq = v[r * n + q];
            v[r * n + p] = vrp * T(cr) - vrq * sc;
            v[r * n + q] = vrp * s + vrq * T(cr);
          }
        }
      }
    }
  }
  if (off_norm() > thresh) throw std::runtime_error("jacobi eigensolver: sweep budget exceeded");
}

// Householder tridiagonalization, real symmetric (EISPACK tred2/tred1 style).
// With want_vecs the accumulated orthogonal transform is left in `a`.
void tridiagonalize_real(std::vector<double>& a, std::size_t n, std::vector<double>& d,
                         std::vector<double>& e, bool want_vecs) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t i = n - 1; i >= 1; --i) {
    std::size_t l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a[i * n + k]);
      if (scale == 0.0) {
        e[i] = a[i * n + l];
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a[i * n + k] /= scale;
          h += a[i * n + k] * a[i * n + k];
        }
        double f = a[i * n + l];
        double gg = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
        e[i] = scale * gg;
        h -= f * gg;
        a[i * n + l] = f - gg;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          if (want_vecs) a[j * n + i] = a[i * n + j] / h;
          double g2 = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g2 += a[j * n + k] * a[i * n + k];
          for (std::size_t k = j + 1; k <= l; ++k) g2 += a[k * n + j] * a[i * n + k];
          e[j] = g2 / h;
          f += e[j] * a[i * n + j];
        }
        double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          double f2 = a[i * n + j];
          double g2 = e[j] - hh * f2;
          e[j] = g2;
          for (std::size_t k = 0; k <= j; ++k)
            a[j * n + k] -= f2 * e[k] + g2 * a[i * n + k];
        }
      }
    } else {
      e[i] = a[i * n + l];
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  if (want_vecs) {
    // accumulate transformations into a (overwrites), NR tred2 convention
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t l = i;  // columns 0..i-1
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < l; ++j) {
          double g2 = 0.0;
          for (std::size_t k = 0; k < l; ++k) g2 += a[i * n + k] * a[k * n + j];
          for (std::size_t k = 0; k < l; ++k) a[k * n + j] -= g2 * a[k * n + i];
        }
      }
      d[i] = a[i * n + i];
      a[i * n + i] = 1.0;
      for (std::size_t j = 0; j < l; ++j) a[j * n + i] = a[i * n + j] = 0.0;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
  }
}

// Implicit QL with Wilkinson shifts on a symmetric tridiagonal (NR tqli).
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::size_t n,
                    std::vector<double>* z) {
  if (n == 0) return;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + 2.0 * std::abs(e[i]));
  // off-diagonals below eps * anorm are noise relative to the matrix, not
  // just relative to their neighbours; without this floor adjacent near-zero
  // diagonal entries stall the deflation test
  const double floor_tol = 0.5 * eps * anorm;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor_tol) break;
      }
      if (m != l) {
        if (iter++ == 50) throw std::runtime_error("tridiagonal QL: too many iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (std::size_t k = 0; k < n; ++k) {
              double fz = (*z)[k * n + i + 1];
              (*z)[k * n + i + 1] = s * (*z)[k * n + i] + c * fz;
              (*z)[k * n + i] = c * (*z)[k * n + i] - s * fz;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

template <typename T>
EigenResult finish_sorted(std::vector<double> d, std::vector<T>* vecs, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  EigenResult out;
  out.dim = n;
  out.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.eigenvalues[k] = d[order[k]];
  if (vecs) {
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = cplx((*vecs)[i * n + order[k]]);
  }
  return out;
}

EigenResult eigen_dispatch(const HermitianMatrix& m, bool want_vectors) {
  const std::size_t n = m.dim();
  if (n == 0) return {};
  if (!m.all_finite()) throw std::invalid_argument("hermitian_eigen: non-finite entry");
  if (m.is_real()) {
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n * n; ++i) a[i] = m.data()[i].real();
    if (n <= kJacobiMaxDim) {
      std::vector<double> v;
      jacobi_cyclic(a, n, want_vectors ? &v : nullptr);
      std::vector<double> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
      return finish_sorted(std::move(d), want_vectors ? &v : nullptr, n);
    }
    std::vector<double> d, e;
    tridiagonalize_real(a, n, d, e, want_vectors);
    tridiagonal_ql(d, e, n, want_vectors ? &a : nullptr);
    return finish_sorted(std::move(d), want_vectors ? &a : nullptr, n);
  }
  std::vector<cplx> a = m.data();
  std::vector<cplx> v;
  jacobi_cyclic(a, n, want_vectors ? &v : nullptr);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i].real();
  return finish_sorted(std::move(d), want_vectors ? &v : nullptr, n);
}

}  // namespace

EigenResult hermitian_eigen(const HermitianMatrix& m) { return eigen_dispatch(m, true); }

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m) {
  return eigen_dispatch(m, false).eigenvalues;
}

// ---------------------------------------------------------------------------
// Generalized eigenproblem via Cholesky reduction

namespace {

// In-place lower Cholesky G = L L^H; throws on non-positive pivot.
template <typename T>
std::vector<T> cholesky_lower(const HermitianMatrix& g) {
  const std::size_t n = g.dim();
  std::vector<T> L(n * n, T(0));
  for (std::size_t j = 0; j < n; ++j) {
    double diag = g(j, j).real();
    for (std::size_t k = 0; k < n && k < j; ++k) diag -= sqr_abs(L[j * n + k]);
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw std::runtime_error("gram matrix not positive definite");
    const double ljj = std::sqrt(diag);
    L[j * n + j] = T(ljj);
    for (std::size_t i = j + 1; i < n; ++i) {
      T s;
      if constexpr (std::is_same_v<T, double>)
        s = g(i, j).real();
      else
        s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * conj_or_id(L[j * n + k]);
      L[i * n + j] = s / T(ljj);
    }
  }
  return L;
}

template <typename T>
GeneralizedEigenResult generalized_impl(const HermitianMatrix& a, const HermitianMatrix& g,
                                        bool want_vectors) {
  const std::size_t n = a.dim();
  auto entry = [&](const HermitianMatrix& m, std::size_t i, std::size_t j) -> T {
    if constexpr (std::is_same_v<T, double>)
      return m(i, j).real();
    else
      return m(i, j);
  };
  std::vector<T> L = cholesky_lower<T>(g);
  // X = L^{-1} A  (forward substitution on each column of A)
  std::vector<T> X(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      T s = entry(a, i, j);
      for (std::size_t k = 0; k < i; ++k) s -= L[i * n + k] * X[k * n + j];
      X[i * n + j] = s / L[i * n + i];
    }
  }
  // B = X L^{-H} = (L^{-1} X^H)^H; compute Y = L^{-1} X^H, then B = Y^H
  std::vector<T> B(n * n);
  std::vector<T> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      T s = conj_or_id(X[j * n + i]);
      for (std::size_t k = 0; k < i; ++k) s -= L[i * n + k] * y[k];
      y[i] = s / L[i * n + i];
    }
    for (std::size_t i = 0; i < n; ++i) B[j * n + i] = conj_or_id(y[i]);
  }
  std::vector<cplx> Bc(n * n);
  for (std::size_t i = 0; i < n * n; ++i) Bc[i] = cplx(B[i]);
  HermitianMatrix bm = HermitianMatrix::from_dense(n, Bc);
  EigenResult er = eigen_dispatch(bm, want_vectors);
  GeneralizedEigenResult out;
  out.dim = n;
  out.eigenvalues = std::move(er.eigenvalues);
  if (want_vectors) {
    // back-substitute c = L^{-H} v (L^H upper triangular)
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<cplx> c(n);
      for (std::size_t i = n; i-- > 0;) {
        cplx s = er.vector(i, k);
        for (std::size_t r = i + 1; r < n; ++r) s -= cplx(conj_or_id(L[r * n + i])) * c[r];
        c[i] = s / cplx(L[i * n + i]);
      }
      for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = c[i];
    }
  }
  return out;
}

}  // namespace

GeneralizedEigenResult generalized_eigen(const HermitianMatrix& a, const HermitianMatrix& g,
                                         bool want_vectors) {
  const std::size_t n = a.dim();
  if (g.dim() != n) throw std::invalid_argument("generalized_eigen: dimension mismatch");
  if (a.is_real() && g.is_real()) return generalized_impl<double>(a, g, want_vectors);
  return generalized_impl<cplx>(a, g, want_vectors);
}

int numerical_rank(std::span<const double> eigenvalues, double scale, double rel_tol) {
  if (!(scale > 0.0) || !(rel_tol > 0.0))
    throw std::invalid_argument("numerical_rank: scale and rel_tol must be positive");
  int count = 0;
  for (double v : eigenvalues)
    if (std::abs(v) > rel_tol * scale) ++count;
  return count;
}

TraceBoundCheck trace_difference_bound_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                             std::span<const double> poly_coeffs, double range_lo,
                                             double range_hi) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw std::invalid_argument("trace_difference_bound_check: dimension mismatch");
  auto poly = [&](double x) {
    double p = 0, xk = 1;
    for (double c : poly_coeffs) {
      p += c * xk;
      xk *= x;
    }
    return p;
  };
  auto dpoly = [&](double x) {
    double p = 0, xk = 1;
    for (std::size_t k = 1; k < poly_coeffs.size(); ++k) {
      p += double(k) * poly_coeffs[k] * xk;
      xk *= x;
    }
    return p;
  };
  std::vector<double> ea = hermitian_eigenvalues(a);
  std::vector<double> eb = hermitian_eigenvalues(b);
  double tra = 0, trb = 0;
  for (double v : ea) tra += poly(v);
  for (double v : eb) trb += poly(v);

  HermitianMatrix diff(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) diff.set(i, j, a(i, j) - b(i, j));
  double s1 = 0;
  for (double v : hermitian_eigenvalues(diff)) s1 += std::abs(v);

  double fp_max = 0;
  const int grid = 10000;
  for (int k = 0; k < grid; ++k) {
    double x = range_lo + (range_hi - range_lo) * k / double(grid - 1);
    fp_max = std::max(fp_max, std::abs(dpoly(x)));
  }
  TraceBoundCheck out;
  out.lhs = std::abs(tra - trb);
  out.rhs = fp_max * s1;
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  QuadratureRule q;
  q.kind = QuadratureRule::Kind::gauss_legendre;
  q.nodes.resize(n);
  q.weights.resize(n);
  const int mhalf = (n + 1) / 2;
  for (int i = 0; i < mhalf; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      // Legendre P_n(x) and derivative via upward recurrence
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  return q;
}

QuadratureRule uniform_periodic(int n) {
  if (n < 1) throw std::invalid_argument("uniform_periodic: n >= 1 required");
  QuadratureRule q;
  q.kind = QuadratureRule::Kind::uniform_periodic;
  q.nodes.resize(n);
  q.weights.assign(n, 2.0 * kPi / n);
  for (int j = 0; j < n; ++j) q.nodes[j] = -kPi + 2.0 * kPi * j / n;
  return q;
}

}  // namespace hemirobin::num
