#include "hemirobin/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hemirobin/cluster.hpp"
#include "hemirobin/numerics.hpp"

namespace hemirobin::density {

namespace {
constexpr double kPi = std::numbers::pi;

double bump(double u) {
  u = std::abs(u);
  if (u >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}
}  // namespace

double TestFunction::operator()(double x) const {
  double p = 0, xk = 1;
  for (double c : coeffs) {
    p += c * xk;
    xk *= x;
  }
  if (kind == Kind::bump_polynomial) p *= bump(x / radius);
  return p;
}

void TestFunction::validate() const {
  if (coeffs.empty() || coeffs[0] != 0.0)
    throw std::invalid_argument("TestFunction: constant term must be zero (f(0) = 0)");
  if (kind == Kind::bump_polynomial && !(radius > 0))
    throw std::invalid_argument("TestFunction: bump radius must be positive");
  if (kind == Kind::polynomial && coeffs.size() > 2)
    throw std::invalid_argument(
        "TestFunction: polynomial degree >= 2 without compact support is refused "
        "(the limiting integral diverges)");
}

double limit_functional_scaled(const boundary::BoundarySymbol& sigma, const TestFunction& f,
                               double scale) {
  f.validate();
  boundary::BoundarySymbol se = boundary::even_part(sigma);
  // xi = sin t turns the inverse sqrt into 1/cos t while dxi = cos t dt;
  // f compactly supported (or linear) keeps the integrand bounded and smooth.
  auto pass = [&](int n_t, int n_phi) {
    num::QuadratureRule qt = num::gauss_legendre(n_t);
    num::QuadratureRule qp = num::uniform_periodic(n_phi);
    double total = 0;
    for (std::size_t j = 0; j < qp.nodes.size(); ++j) {
      const double s = boundary::evaluate(se, qp.nodes[j]);
      double inner = 0;
      for (int i = 0; i < n_t; ++i) {
        const double t = qt.nodes[i] * (kPi / 2);
        const double w = qt.weights[i] * (kPi / 2);
        const double c = std::cos(t);
        const double arg = (c > 1e-305) ? scale * s / (kPi * c) : 0.0;
        inner += w * c * f(arg);
      }
      total += qp.weights[j] * inner;
    }
    return total / (4.0 * kPi);
  };
  int n_t = 64, n_phi = std::max(64, 8 * sigma.degree());
  double prev = pass(n_t, n_phi);
  for (int it = 0; it < 8; ++it) {
    n_t *= 2;
    n_phi *= 2;
    double next = pass(n_t, n_phi);
    if (std::abs(next - prev) <= 1e-8 * std::max(1.0, std::abs(next))) return next;
    prev = next;
  }
  throw std::runtime_error("limit_functional: quadrature failed to reach 1e-8");
}

double limit_functional(const boundary::BoundarySymbol& sigma, const TestFunction& f) {
  return limit_functional_scaled(sigma, f, 4.0);
}

namespace {

// Roots of g(phi) = 0 on [-pi, pi) for a smooth periodic g, by dense scan and
// bisection refinement.
std::vector<double> periodic_roots(const std::function<double(double)>& g, int scan) {
  std::vector<double> roots;
  double prev_phi = -kPi, prev_v = g(prev_phi);
  for (int j = 1; j <= scan; ++j) {
    double phi = -kPi + 2 * kPi * j / scan;
    double v = g(phi);
    if (prev_v == 0.0) roots.push_back(prev_phi);
    if ((prev_v < 0 && v > 0) || (prev_v > 0 && v < 0)) {
      double a = prev_phi, b = phi, fa = prev_v;
      for (int it = 0; it < 100; ++it) {
        double m = 0.5 * (a + b), fm = g(m);
        if ((fa < 0 && fm < 0) || (fa > 0 && fm > 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_phi = phi;
    prev_v = v;
  }
  return roots;
}

}  // namespace

double rho_density(const boundary::BoundarySymbol& sigma, double y) {
  if (y == 0.0) throw std::domain_error("rho_density: y = 0 has no pointwise value");
  boundary::BoundarySymbol se = boundary::even_part(sigma);
  const double sign = (y > 0) ? 1.0 : -1.0;
  // s_part(phi) = positive (resp. negative) part of sigma_even
  auto s_part = [&](double phi) {
    double v = boundary::evaluate(se, phi);
    return sign > 0 ? std::max(v, 0.0) : std::max(-v, 0.0);
  };
  const double ay = std::abs(y);
  const double cap = kPi * ay / 4.0;  // integrand support: 0 < s_part < cap

  // breakpoints: sign changes of sigma_even and of (s - cap)
  auto gv = [&](double phi) { return boundary::evaluate(se, phi) * sign; };
  std::vector<double> cuts{-kPi, kPi};
  const int scan = std::max(1024, 64 * std::max(1, sigma.degree()));
  for (double r : periodic_roots(gv, scan)) cuts.push_back(r);
  for (double r : periodic_roots([&](double p) { return s_part(p) - cap; }, scan)) cuts.push_back(r);
  std::sort(cuts.begin(), cuts.end());

  auto integrand = [&](double phi) {
    double s = s_part(phi);
    if (s <= 0.0 || s >= cap) return 0.0;
    double u = s / cap;  // = 4 s / (pi |y|)
    double base = 4.0 * s / kPi;
    return base * base / std::sqrt(1.0 - u * u);
  };

  // each cell integrated under phi = mid + half*cos(theta), which absorbs the
  // inverse-square-root behaviour at either endpoint
  auto cell = [&](double a, double b, int n) {
    if (b - a < 1e-15) return 0.0;
    num::QuadratureRule q = num::gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0;
    for (int i = 0; i < n; ++i) {
      double theta = (q.nodes[i] + 1.0) * (kPi / 2);  // [0, pi]
      double w = q.weights[i] * (kPi / 2);
      acc += w * integrand(mid + half * std::cos(theta)) * half * std::sin(theta);
    }
    return acc;
  };

  auto total = [&](int n) {
    double acc = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double mid = 0.5 * (cuts[i] + cuts[i + 1]);
      double s = s_part(mid);
      if (s <= 0.0 || s >= cap) continue;
      acc += cell(cuts[i], cuts[i + 1], n);
    }
    return acc;
  };
  double prev = total(96), result = prev;
  for (int it = 0; it < 6; ++it) {
    double next = total(96 << (it + 1));
    result = next;
    if (std::abs(next - prev) <= 1e-11 * std::max(1.0, std::abs(next))) break;
    prev = next;
  }
  return result / (2.0 * kPi * ay * ay * ay);
}

DensityReport empirical_vs_limit(const boundary::BoundarySymbol& sigma, const TestFunction& f,
                                 const std::vector<int>& ell_ladder) {
  for (std::size_t i = 1; i < ell_ladder.size(); ++i)
    if (ell_ladder[i] <= ell_ladder[i - 1])
      throw std::invalid_argument("empirical_vs_limit: ladder must be strictly increasing");
  DensityReport rep;
  rep.ladder = ell_ladder;
  const double lim = limit_functional(sigma, f);
  for (int ell : ell_ladder) {
    cluster::GapSpectrum g = cluster::gap_spectrum(sigma, ell);
    double emp = 0;
    for (double v : g.gaps) emp += f(v);
    emp /= double(ell + 1);
    rep.empirical.push_back(emp);
    rep.limit.push_back(lim);
    rep.deviation.push_back(std::abs(emp - lim));
  }
  return rep;
}

WeinsteinComparison weinstein_comparison(const boundary::BoundarySymbol& sigma, const TestFunction& f) {
  WeinsteinComparison w;
  w.naive = limit_functional_scaled(sigma, f, 2.0);
  w.correct = limit_functional_scaled(sigma, f, 4.0);
  double correct_halved = limit_functional_scaled(boundary::scale(sigma, 0.5), f, 4.0);
  w.substitution_check = std::abs(w.naive - correct_halved);
  return w;
}

double geodesic_average(double theta, double phi, const boundary::BoundarySymbol& sigma, double eps) {
  if (!(theta > 0) || theta > kPi / 2)
    throw std::domain_error("geodesic_average: theta in (0, pi/2] required");
  if (!(eps > 0) || !(eps < theta / 2))
    throw std::domain_error("geodesic_average: eps in (0, theta/2) required for the strip geometry");
  // Arc with plane normal at (theta, alpha): u(s) = cos(s) e1 + sin(s) e2,
  // s in [pi/2, 3pi/2] is the upper-hemisphere half; z(s) = -sin(theta) cos(s).
  // The strip z < sin(eps) occupies [pi/2, s*] and [2pi - s*, 3pi/2].
  num::QuadratureRule q = num::gauss_legendre(64);
  const double st = std::sin(theta), ct = std::cos(theta);
  double total = 0;
  for (double alpha : {phi, phi + kPi}) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double e1[3] = {ct * ca, ct * sa, -st};
    const double e2[3] = {-sa, ca, 0.0};
    const double c0 = -std::sin(eps) / st;  // cos(s) threshold
    const double sstar = std::acos(std::max(-1.0, c0));
    const double segs[2][2] = {{kPi / 2, sstar}, {2 * kPi - sstar, 3 * kPi / 2}};
    for (const auto& seg : segs) {
      const double mid = 0.5 * (seg[0] + seg[1]), half = 0.5 * (seg[1] - seg[0]);
      for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double s = mid + half * q.nodes[i];
        const double ux = std::cos(s) * e1[0] + std::sin(s) * e2[0];
        const double uy = std::cos(s) * e1[1] + std::sin(s) * e2[1];
        const double az = std::atan2(uy, ux);
        total += half * q.weights[i] * boundary::evaluate(sigma, az) / eps;
      }
    }
  }
  return total / (2.0 * kPi);
}

}  // namespace hemirobin::density
