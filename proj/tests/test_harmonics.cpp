#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hemirobin/harmonics.hpp"
#include "hemirobin/numerics.hpp"

using namespace hemirobin;
using namespace hemirobin::harm;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gamma_ratio closed values and asymptotics") {
  CHECK(gamma_ratio(0.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(gamma_ratio(2.0) == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-13));
  // gamma(x) ~ sqrt(2/x) for large x; oracle is the direct log-gamma evaluation
  double direct = std::exp(num::log_gamma(500.5) - num::log_gamma(501.0));
  CHECK(gamma_ratio(1000.0) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(std::abs(gamma_ratio(1000.0) - std::sqrt(2.0 / 1000.0)) < 5e-5);
  CHECK_THROWS_AS(gamma_ratio(-1.0), std::domain_error);
}

TEST_CASE("trace amplitudes: closed-form values") {
  TraceAmplitudes t0 = trace_amplitudes(0);
  CHECK(t0.at_a(0) == doctest::Approx(1.0).epsilon(1e-13));

  TraceAmplitudes t1 = trace_amplitudes(1);
  CHECK(t1.at_a(1) * t1.at_a(1) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(t1.at_a(-1) * t1.at_a(-1) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(t1.at_a(0) == 0.0);
  // B_{1,0} = -sqrt(3/(2 pi)): P_1^0(x) = x so the derivative at 0 is 1
  CHECK(t1.at_b(0) == doctest::Approx(-std::sqrt(3.0 / (2 * kPi))).epsilon(1e-13));
}

TEST_CASE("trace amplitude parity, symmetry, positivity") {
  for (int ell : {2, 5, 17, 40}) {
    TraceAmplitudes t = trace_amplitudes(ell);
    for (int m = -ell; m <= ell; ++m) {
      if ((ell - m) % 2 == 0) {
        CHECK(t.at_a(m) > 0.0);
        CHECK(t.at_b(m) == 0.0);
        CHECK(t.at_a(-m) == doctest::Approx(t.at_a(m)).epsilon(1e-13));
      } else {
        CHECK(t.at_a(m) == 0.0);
        CHECK(t.at_b(m) != 0.0);
      }
    }
  }
}

TEST_CASE("amplitudes stay finite up to ell = 2000") {
  TraceAmplitudes t = trace_amplitudes(2000);
  for (double v : t.a) CHECK(std::isfinite(v));
  for (double v : t.b) CHECK(std::isfinite(v));
}

TEST_CASE("legendre_p_at closed values") {
  CHECK(legendre_p_at(2, 0, 0.0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(legendre_p_at(1, 1, 0.0) == doctest::Approx(-1.0).epsilon(1e-12));  // Condon-Shortley
  CHECK(legendre_p_at(3, 0, 0.5) == doctest::Approx(0.5 * (5 * 0.125 - 3 * 0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(legendre_p_at(2, 0, 1.5), std::domain_error);
  // P_5^3(0) against the Gamma closed form (-1)^4 (2^3/sqrt(pi)) G(9/2)/G(2)
  double closed = (8.0 / std::sqrt(kPi)) * std::exp(num::log_gamma(4.5) - num::log_gamma(2.0));
  CHECK(legendre_p_at(5, 3, 0.0) == doctest::Approx(closed).epsilon(1e-10));
}

TEST_CASE("legendre negative-m extension") {
  for (int ell : {3, 6}) {
    for (int m = 1; m <= ell; ++m) {
      double ratio = std::exp(num::log_gamma(ell - m + 1.0) - num::log_gamma(ell + m + 1.0));
      double expect = (m % 2 ? -1 : 1) * ratio * legendre_p_at(ell, m, 0.37);
      CHECK(legendre_p_at(ell, -m, 0.37) == doctest::Approx(expect).epsilon(1e-11));
    }
  }
}

TEST_CASE("gamma-formula amplitudes equal the Legendre recurrence at the equator") {
  // A_{l,m} = |Yhat_{l,m}(0)|; the two routes share nothing past log_gamma
  for (int ell : {1, 7, 60, 200}) {
    TraceAmplitudes t = trace_amplitudes(ell);
    for (int m = -ell; m <= ell; ++m) {
      if ((ell - m) % 2 != 0) continue;
      double rec = std::abs(norm_legendre_at(ell, m, 0.0));
      CHECK(std::abs(t.at_a(m) - rec) <= 1e-9 * rec);
    }
  }
}

TEST_CASE("normal-derivative amplitudes match the recurrence derivative") {
  for (int ell : {1, 6, 25}) {
    TraceAmplitudes t = trace_amplitudes(ell);
    for (int m = -ell; m <= ell; ++m) {
      if ((ell - m) % 2 == 0) continue;
      std::vector<double> der = norm_legendre_derivative_column(ell, m, 0.0);
      double expect = -der[ell - std::abs(m)] / std::sqrt(2 * kPi);
      CHECK(t.at_b(m) == doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

TEST_CASE("symbol sequences") {
  TraceAmplitudes t4 = trace_amplitudes(4);
  SymbolSequence x4 = symbol(4, SymbolKind::x);
  for (int m = -4; m <= 4; ++m) CHECK(x4.at(m) == t4.at_a(m));

  SymbolSequence y2 = symbol(2, SymbolKind::y);
  TraceAmplitudes t2 = trace_amplitudes(2);
  CHECK(y2.at(0) == doctest::Approx(t2.at_a(0) * t2.at_a(0)));
  CHECK(y2.at(2) == doctest::Approx(t2.at_a(2) * t2.at_a(2)));
  CHECK(y2.at(1) == 0.0);

  SymbolSequence z2 = symbol(2, SymbolKind::z);
  CHECK(z2.at(0) == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-13));
  CHECK(z2.at(2) == 0.0);
  CHECK(z2.at(-2) == 0.0);
}

TEST_CASE("amplitude diagnostics: small case and ladder rates") {
  TraceAmplitudes t2 = trace_amplitudes(2);
  AmplitudeDiagnostics d2 = amplitude_diagnostics(2);
  double direct = t2.at_a(0) * t2.at_a(0) + 2 * t2.at_a(2) * t2.at_a(2);
  CHECK(d2.sum_a2 == doctest::Approx(direct).epsilon(1e-13));

  // sum A^2 grows like 2 ell (and in fact equals 2 ell + 1 exactly)
  AmplitudeDiagnostics d400 = amplitude_diagnostics(400);
  CHECK(d400.sum_a2 / 400.0 > 1.9);
  CHECK(d400.sum_a2 / 400.0 < 2.1);
  CHECK(d400.sum_a2 == doctest::Approx(801.0).epsilon(1e-10));

  // l1 deviation / ell^{2/3} bounded (no growth along the ladder)
  double prev = 1e9;
  for (int ell : {100, 200, 400, 800}) {
    AmplitudeDiagnostics d = amplitude_diagnostics(ell);
    double ratio = d.l1_deviation / std::pow(double(ell), 2.0 / 3.0);
    CHECK(ratio < 0.5);
    CHECK(ratio < prev * 1.05);
    prev = ratio;
  }
}

TEST_CASE("z vs x Hilbert-Schmidt deviation is O(ell^{2/3})") {
  double prev = 1e9;
  for (int ell : {100, 200, 400, 800}) {
    SymbolSequence x = symbol(ell, SymbolKind::x);
    SymbolSequence z = symbol(ell, SymbolKind::z);
    double s = 0;
    for (int m = -ell; m <= ell; ++m) {
      double d = x.at(m) - z.at(m);
      s += d * d;
    }
    double ratio = s / std::pow(double(ell), 2.0 / 3.0);
    CHECK(ratio < 1.5);
    CHECK(ratio < prev * 1.10);
    prev = ratio;
  }
}

TEST_CASE("resolvent coefficient bound") {
  SUBCASE("finite and positive") {
    double v = resolvent_coefficient_bound(2, 6.5, 50);
    CHECK(v > 0.0);
    CHECK(std::isfinite(v));
  }
  SUBCASE("pole rejection") {
    CHECK_THROWS_AS(resolvent_coefficient_bound(2, 12.0, 50), std::domain_error);
  }
  SUBCASE("modes beyond the truncation contribute nothing") {
    // A_{k,m} = 0 for |m| > k, so for |m| > k_max every term of the m-th
    // coefficient vanishes; the supremum must equal the one over |m| <= k_max
    const int ell = 2, kmax = 50;
    const double lam = 6.5;
    double sup = resolvent_coefficient_bound(ell, lam, kmax);
    double direct_sup = 0;
    for (int m = -kmax; m <= kmax; ++m) {
      double s = 0;
      for (int k = std::abs(m); k <= kmax; ++k) {
        if (k == ell || (k - m) % 2 != 0) continue;
        double a2 = (2.0 * k + 1.0) / std::numbers::pi * gamma_ratio(double(k - m)) * gamma_ratio(double(k + m));
        s += a2 / (double(k) * (k + 1) - lam);
      }
      direct_sup = std::max(direct_sup, std::abs(s));
    }
    CHECK(sup == doctest::Approx(direct_sup).epsilon(1e-12));
  }
  SUBCASE("rate ladder: value * sqrt(l)/log(l) bounded, truncation stable to 1%") {
    double prev = 1e9;
    for (int ell : {50, 100, 200}) {
      double lam = double(ell) * (ell + 1) + 1.0;
      double v1 = resolvent_coefficient_bound(ell, lam, 8 * ell);
      double v2 = resolvent_coefficient_bound(ell, lam, 16 * ell);
      CHECK(std::abs(v1 - v2) <= 0.01 * v1);
      double ratio = v1 * std::sqrt(double(ell)) / std::log(double(ell));
      CHECK(ratio < 0.5);
      CHECK(ratio < prev * 1.05);
      prev = ratio;
    }
  }
}
