#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hemirobin/cluster.hpp"

using namespace hemirobin;
using namespace hemirobin::cluster;
using hemirobin::num::cplx;

namespace {
constexpr double kPi = std::numbers::pi;

boundary::BoundarySymbol make_sigma(std::initializer_list<std::pair<int, cplx>> coeffs) {
  int d = 0;
  for (auto& [k, c] : coeffs) d = std::max(d, std::abs(k));
  std::vector<cplx> v(2 * d + 1, cplx(0));
  for (auto& [k, c] : coeffs) {
    v[k + d] = c;
    v[-k + d] = std::conj(c);
  }
  return boundary::BoundarySymbol(d, v);
}

const boundary::BoundarySymbol kOne = make_sigma({{0, 1.0}});
const boundary::BoundarySymbol kOnePlusCos2 = make_sigma({{0, 1.0}, {2, 0.5}});
const boundary::BoundarySymbol kTwoCos = make_sigma({{1, 1.0}});
}  // namespace

TEST_CASE("cluster matrix for constant sigma is diag(A^2)") {
  for (int ell : {0, 3, 10}) {
    ClusterMatrix cm = build_cluster_matrix(kOne, ell);
    harm::TraceAmplitudes t = harm::trace_amplitudes(ell);
    REQUIRE(cm.matrix.dim() == std::size_t(ell + 1));
    for (std::size_t i = 0; i < cm.basis.size(); ++i) {
      double a = t.at_a(cm.basis[i]);
      CHECK(std::abs(cm.matrix(i, i) - cplx(a * a)) < 1e-13 * std::max(1.0, a * a));
      for (std::size_t j = i + 1; j < cm.basis.size(); ++j) CHECK(std::abs(cm.matrix(i, j)) == 0.0);
    }
  }
}

TEST_CASE("odd sigma gives the zero cluster matrix") {
  ClusterMatrix cm = build_cluster_matrix(kTwoCos, 10);
  CHECK(cm.matrix.frobenius_norm() == 0.0);
}

TEST_CASE("ell = 1 hand-computed cluster matrix and spectrum") {
  // entries (3/2) [[1, 1/2], [1/2, 1]] with eigenvalues {3/4, 9/4}
  ClusterMatrix cm = build_cluster_matrix(kOnePlusCos2, 1);
  CHECK(cm.matrix(0, 0).real() == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(cm.matrix(0, 1).real() == doctest::Approx(0.75).epsilon(1e-13));
  GapSpectrum g = gap_spectrum(kOnePlusCos2, 1);
  CHECK(g.gaps[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(g.gaps[1] == doctest::Approx(2.25).epsilon(1e-12));

  GapSpectrum gc = gap_spectrum(kOne, 1);
  CHECK(gc.gaps[0] == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(gc.gaps[1] == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("gap spectrum basics") {
  GapSpectrum z = gap_spectrum(make_sigma({{0, 0.0}}), 7);
  for (double v : z.gaps) CHECK(v == 0.0);
  // operator norm bound |gap| <= sup|sigma| * sup_m A^2
  GapSpectrum g = gap_spectrum(kOnePlusCos2, 40);
  harm::AmplitudeDiagnostics d = harm::amplitude_diagnostics(40);
  double bound = kOnePlusCos2.sup_norm() * d.sup_a2;
  CHECK(g.gaps.size() == 41);
  CHECK(std::abs(g.gaps.front()) <= bound * (1 + 1e-12));
  CHECK(std::abs(g.gaps.back()) <= bound * (1 + 1e-12));
}

TEST_CASE("operator norm grows like sqrt(ell)") {
  double prev = 1e9;
  for (int ell : {50, 100, 200, 400}) {
    GapSpectrum g = gap_spectrum(kOnePlusCos2, ell);
    double nrm = std::max(std::abs(g.gaps.front()), std::abs(g.gaps.back()));
    double ratio = nrm / std::sqrt(double(ell));
    CHECK(ratio < 3.0);
    CHECK(ratio < prev * 1.02);
    prev = ratio;
  }
}

TEST_CASE("cluster trace: closed form vs matrix trace and spectrum sum") {
  for (const auto& s : {kOne, kOnePlusCos2}) {
    for (int ell : {2, 25, 80}) {
      double closed = cluster_trace(s, ell);
      ClusterMatrix cm = build_cluster_matrix(s, ell);
      CHECK(cm.matrix.trace() == doctest::Approx(closed).epsilon(1e-12));
      GapSpectrum g = gap_spectrum(s, ell);
      double sum = 0;
      for (double v : g.gaps) sum += v;
      CHECK(std::abs(sum - closed) <= 1e-9 * double(ell) * std::max(1.0, s.sup_norm()));
    }
  }
  // odd sigma and mean-zero sigma have zero trace
  CHECK(cluster_trace(kTwoCos, 30) == 0.0);
  CHECK(cluster_trace(make_sigma({{2, 0.5}}), 30) == 0.0);
}

TEST_CASE("W[sigma] equals W[sigma_even] entrywise") {
  boundary::BoundarySymbol mixed = make_sigma({{1, 0.4}, {2, 0.5}, {3, cplx(0.1, 0.2)}});
  boundary::BoundarySymbol even = boundary::even_part(mixed);
  for (int ell : {4, 9}) {
    ClusterMatrix a = build_cluster_matrix(mixed, ell);
    ClusterMatrix b = build_cluster_matrix(even, ell);
    for (std::size_t i = 0; i < a.matrix.dim(); ++i)
      for (std::size_t j = 0; j < a.matrix.dim(); ++j)
        CHECK(std::abs(a.matrix(i, j) - b.matrix(i, j)) == 0.0);
  }
}

TEST_CASE("spectrum invariant under phi-shift of sigma") {
  const double phi0 = 0.83;
  auto shift = [&](const boundary::BoundarySymbol& s) {
    std::vector<cplx> c(2 * s.degree() + 1);
    for (int k = -s.degree(); k <= s.degree(); ++k)
      c[k + s.degree()] = s.coeff(k) * std::exp(cplx(0, -k * phi0));
    return boundary::BoundarySymbol(s.degree(), c);
  };
  boundary::BoundarySymbol s = make_sigma({{0, 0.6}, {2, cplx(0.3, -0.2)}, {4, 0.1}});
  GapSpectrum g1 = gap_spectrum(s, 12);
  GapSpectrum g2 = gap_spectrum(shift(s), 12);
  for (std::size_t k = 0; k < g1.gaps.size(); ++k)
    CHECK(std::abs(g1.gaps[k] - g2.gaps[k]) <= 1e-10 * std::max(1.0, std::abs(g1.gaps[k])));
}

TEST_CASE("positive scaling of sigma scales the spectrum") {
  boundary::BoundarySymbol s = kOnePlusCos2;
  GapSpectrum g1 = gap_spectrum(s, 9);
  GapSpectrum g3 = gap_spectrum(boundary::scale(s, 3.0), 9);
  for (std::size_t k = 0; k < g1.gaps.size(); ++k)
    CHECK(g3.gaps[k] == doctest::Approx(3.0 * g1.gaps[k]).epsilon(1e-12));
}

TEST_CASE("sandwich spectra") {
  SUBCASE("nonnegative sigma scales exactly") {
    SandwichSpectra sw = sandwich_spectra(kOnePlusCos2, 5, 0.1);
    GapSpectrum g = gap_spectrum(kOnePlusCos2, 5);
    for (std::size_t k = 0; k < g.gaps.size(); ++k) {
      CHECK(sw.lower.gaps[k] == doctest::Approx(0.9 * g.gaps[k]).epsilon(1e-9));
      CHECK(sw.upper.gaps[k] == doctest::Approx(1.1 * g.gaps[k]).epsilon(1e-9));
      CHECK(sw.lower.gaps[k] <= sw.upper.gaps[k]);
    }
  }
  SUBCASE("epsilon -> 0 recovers the plain spectrum") {
    GapSpectrum g = gap_spectrum(kOnePlusCos2, 6);
    SandwichSpectra sw = sandwich_spectra(kOnePlusCos2, 6, 1e-9);
    for (std::size_t k = 0; k < g.gaps.size(); ++k) {
      CHECK(sw.lower.gaps[k] == doctest::Approx(g.gaps[k]).epsilon(1e-7));
      CHECK(sw.upper.gaps[k] == doctest::Approx(g.gaps[k]).epsilon(1e-7));
    }
  }
  SUBCASE("sign-changing sigma: |sigma| truncation at 4D cannot reach the gate") {
    // |sigma| has corner singularities, so its Fourier tail decays like 1/k^2
    // and the degree-doubling agreement gate (1e-6) correctly refuses
    boundary::BoundarySymbol s = make_sigma({{0, 0.2}, {2, 0.5}});  // changes sign
    CHECK_THROWS_WITH_AS(sandwich_spectra(s, 5, 0.1),
                         "sandwich_spectra: |sigma| truncation degree insufficient",
                         std::runtime_error);
  }
}

TEST_CASE("model operator trace") {
  SmoothWindow w{1.0};
  SUBCASE("k = 1, constant sigma: Riemann sum of the window square") {
    ModelTrace mt = model_operator_trace(w, kOne, 200, 1);
    double direct = 0;
    for (int m = -200; m <= 200; m += 2)
      if (std::abs(m) <= 198) direct += std::pow(w(m / 200.0), 2);
    CHECK(mt.numeric == doctest::Approx(direct / 201.0).epsilon(1e-12));
    CHECK(std::abs(mt.numeric - mt.limit) < 0.02 * std::abs(mt.limit));
  }
  SUBCASE("mean-zero sigma: k = 1 trace vanishes exactly") {
    ModelTrace mt = model_operator_trace(w, make_sigma({{2, 0.5}}), 100, 1);
    CHECK(mt.numeric == 0.0);
    CHECK(std::abs(mt.limit) < 1e-12);
  }
  SUBCASE("k = 2 converges at 5%") {
    ModelTrace mt = model_operator_trace(w, kOnePlusCos2, 300, 2);
    CHECK(std::abs(mt.numeric - mt.limit) <= 0.05 * std::abs(mt.limit));
  }
}

TEST_CASE("commutator Hilbert-Schmidt norm") {
  SmoothWindow w{1.0};
  SUBCASE("constant sigma commutes") {
    CHECK(commutator_hs_norm(w, kOne, 50) == 0.0);
  }
  SUBCASE("bounded along the ladder") {
    boundary::BoundarySymbol s = make_sigma({{2, 0.5}});  // cos 2phi
    double prev = 1e9;
    for (int ell : {100, 200, 400, 800}) {
      double v = commutator_hs_norm(w, s, ell);
      CHECK(v < 1.0);
      CHECK(v < prev * 1.05);
      prev = v;
    }
  }
  SUBCASE("matches the direct entrywise sum") {
    // oracle: band-limited double sum over the full lattice
    boundary::BoundarySymbol s = kOnePlusCos2;
    const int ell = 64;
    double s2 = 0;
    for (int m = -2000; m <= 2000; ++m)
      for (int k = -2; k <= 2; ++k) {
        auto wc = [&](int mm) {
          return (std::abs(mm) <= ell - 2 && (ell - mm) % 2 == 0) ? w(double(mm) / ell) : 0.0;
        };
        double diff = wc(m) - wc(m + k);
        s2 += std::norm(s.coeff(k)) * diff * diff;
      }
    CHECK(commutator_hs_norm(w, s, ell) == doctest::Approx(std::sqrt(s2)).epsilon(1e-12));
  }
  SUBCASE("zero window") {
    SmoothWindow none{1.0, 0.0};
    CHECK(commutator_hs_norm(none, kOnePlusCos2, 50) == 0.0);
  }
}

TEST_CASE("gap spectrum CSV shape") {
  std::vector<GapSpectrum> gs{gap_spectrum(kOne, 1)};
  std::string csv = gap_spectrum_csv(gs);
  CHECK(csv.substr(0, 10) == "ell,k,gap\n");
  // value row parses back to the known gap (formatting is %.17g)
  std::size_t p = csv.find("1,1,");
  REQUIRE(p != std::string::npos);
  CHECK(std::stod(csv.substr(p + 4)) == doctest::Approx(1.5).epsilon(1e-12));
}
