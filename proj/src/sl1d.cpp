#include "hemirobin/sl1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hemirobin::sl1d {

namespace {
constexpr double kPi = std::numbers::pi;

double bisect(double lo, double hi, double flo, const auto& f) {
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

double robin_secular(double sigma, double k) { return k * std::sin(k) - sigma * std::cos(k); }

double robin_eigenvalue(double sigma, int n) {
  if (n < 1) throw std::invalid_argument("robin_eigenvalue: n >= 1 required");
  const double lo = kPi * (n - 0.5) + 1e-13;
  const double hi = kPi * (n + 0.5) - 1e-13;
  auto g = [&](double k) { return robin_secular(sigma, k); };
  double flo = g(lo), fhi = g(hi);
  if ((flo < 0) == (fhi < 0))
    throw std::runtime_error("robin_eigenvalue: bracket failure (indexing error)");
  double k = bisect(lo, hi, flo, g);
  // polish with a few Newton steps; g'(k) = sin k + k cos k + sigma sin k
  for (int it = 0; it < 40; ++it) {
    double gv = g(k);
    double gp = std::sin(k) + k * std::cos(k) + sigma * std::sin(k);
    if (gp == 0.0) break;
    double step = gv / gp;
    double kn = k - step;
    if (kn <= lo || kn >= hi) break;
    k = kn;
    if (std::abs(step) < 1e-15 * std::max(1.0, k)) break;
  }
  return k * k;
}

double step_secular(double sigma, double eps, double mu) {
  const double k = std::sqrt(std::max(mu, 0.0));
  const double t = mu - sigma / eps;
  double f1, f2;  // kappa sin(kappa eps), cos(kappa eps) and hyperbolic twins
  if (t >= 0) {
    const double kap = std::sqrt(t);
    f1 = kap * std::sin(kap * eps);
    f2 = std::cos(kap * eps);
  } else {
    const double eta = std::sqrt(-t);
    f1 = -eta * std::sinh(eta * eps);
    f2 = std::cosh(eta * eps);
  }
  return -f1 * std::cos(k * (1.0 - eps)) - k * f2 * std::sin(k * (1.0 - eps));
}

double step_eigenvalue(double sigma, double eps, int n) {
  if (n < 1) throw std::invalid_argument("step_eigenvalue: n >= 1 required");
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("step_eigenvalue: eps in (0,1) required");
  auto S = [&](double mu) { return step_secular(sigma, eps, mu); };
  const double klo = std::max(1e-9, kPi * (n - 0.5));
  const double khi = kPi * (n + 0.5);
  const double kexp = std::sqrt(std::max(kPi * kPi * n * n + sigma, 0.25));
  // scan the bracket in k for sign changes; take the one nearest the
  // asymptotic position pi^2 n^2 + sigma
  const int grid = 4096;
  double best_lo = 0, best_hi = 0, best_dist = -1;
  double prev_k = klo, prev_v = S(klo * klo);
  for (int i = 1; i <= grid; ++i) {
    double k = klo + (khi - klo) * i / grid;
    double v = S(k * k);
    if ((prev_v < 0) != (v < 0)) {
      double mid = 0.5 * (prev_k + k);
      double dist = std::abs(mid - kexp);
      if (best_dist < 0 || dist < best_dist) {
        best_dist = dist;
        best_lo = prev_k;
        best_hi = k;
      }
    }
    prev_k = k;
    prev_v = v;
  }
  if (best_dist < 0)
    throw std::runtime_error("step_eigenvalue: bracket failure (turning-point regime flagged)");
  double mu = bisect(best_lo * best_lo, best_hi * best_hi, S(best_lo * best_lo), S);
  return mu;
}

}  // namespace hemirobin::sl1d
