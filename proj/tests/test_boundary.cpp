#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hemirobin/boundary.hpp"

using namespace hemirobin;
using namespace hemirobin::boundary;
using hemirobin::num::cplx;

namespace {
constexpr double kPi = std::numbers::pi;

BoundarySymbol make_sigma(std::initializer_list<std::pair<int, cplx>> coeffs) {
  int d = 0;
  for (auto& [k, c] : coeffs) d = std::max(d, std::abs(k));
  std::vector<cplx> v(2 * d + 1, cplx(0));
  for (auto& [k, c] : coeffs) {
    v[k + d] = c;
    v[-k + d] = std::conj(c);
  }
  return BoundarySymbol(d, v);
}
}  // namespace

TEST_CASE("from_samples recovers trigonometric polynomials") {
  SUBCASE("1 + cos 2phi") {
    std::vector<double> v(16);
    for (int j = 0; j < 16; ++j) {
      double phi = -kPi + 2 * kPi * j / 16;
      v[j] = 1 + std::cos(2 * phi);
    }
    BoundarySymbol s = from_samples(v, 2);
    CHECK(std::abs(s.coeff(0) - cplx(1)) < 1e-12);
    CHECK(std::abs(s.coeff(2) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(s.coeff(-2) - cplx(0.5)) < 1e-12);
    CHECK(std::abs(s.coeff(1)) < 1e-12);
  }
  SUBCASE("2 cos phi") {
    std::vector<double> v(8);
    for (int j = 0; j < 8; ++j) v[j] = 2 * std::cos(-kPi + 2 * kPi * j / 8);
    BoundarySymbol s = from_samples(v, 1);
    CHECK(std::abs(s.coeff(1) - cplx(1)) < 1e-12);
    CHECK(std::abs(s.coeff(-1) - cplx(1)) < 1e-12);
  }
  SUBCASE("zero") {
    std::vector<double> v(8, 0.0);
    BoundarySymbol s = from_samples(v, 1);
    CHECK(s.is_zero());
  }
  SUBCASE("too few samples refused") {
    std::vector<double> v(7, 0.0);
    CHECK_THROWS_AS(from_samples(v, 1), std::invalid_argument);
  }
}

TEST_CASE("evaluate") {
  BoundarySymbol c1 = make_sigma({{0, 1.0}});
  CHECK(evaluate(c1, 0.7) == doctest::Approx(1.0));
  BoundarySymbol cphi = make_sigma({{1, 1.0}});  // 2 cos phi
  CHECK(evaluate(cphi, 0.0) == doctest::Approx(2.0));
  BoundarySymbol s = make_sigma({{0, 1.0}, {2, 0.5}});  // 1 + cos 2phi
  CHECK(evaluate(s, kPi / 2) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("hermitian symmetry is enforced") {
  std::vector<cplx> bad{cplx(0, 1), cplx(1, 0), cplx(0, 1)};  // c_{-1} != conj(c_1)
  CHECK_THROWS_AS(BoundarySymbol(1, bad), std::invalid_argument);
}

TEST_CASE("even part") {
  BoundarySymbol odd = make_sigma({{1, 1.0}});
  CHECK(even_part(odd).is_zero());

  BoundarySymbol even = make_sigma({{0, 1.0}, {2, 0.5}});
  BoundarySymbol ep = even_part(even);
  for (int k = -2; k <= 2; ++k) CHECK(std::abs(ep.coeff(k) - even.coeff(k)) < 1e-15);

  BoundarySymbol mix = make_sigma({{1, 0.5}, {2, 0.5}});  // cos phi + cos 2phi
  BoundarySymbol m_even = even_part(mix);
  CHECK(std::abs(m_even.coeff(2) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(m_even.coeff(1)) == 0.0);

  // projection property and exact even+odd split
  BoundarySymbol twice = even_part(m_even);
  for (int k = -2; k <= 2; ++k) CHECK(std::abs(twice.coeff(k) - m_even.coeff(k)) == 0.0);
  EvenOddSplit split = even_odd_split(mix);
  for (int k = -2; k <= 2; ++k)
    CHECK(std::abs(split.even.coeff(k) + split.odd.coeff(k) - mix.coeff(k)) == 0.0);
}

TEST_CASE("round trip samples -> symbol -> evaluate -> symbol") {
  BoundarySymbol s = make_sigma({{0, 0.3}, {1, cplx(0.2, -0.1)}, {5, cplx(-0.4, 0.05)}});
  const int n = 64;
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = evaluate(s, -kPi + 2 * kPi * j / n);
  BoundarySymbol back = from_samples(v, s.degree());
  for (int k = -5; k <= 5; ++k) CHECK(std::abs(back.coeff(k) - s.coeff(k)) < 1e-12);
}

TEST_CASE("multiplication_matrix") {
  SUBCASE("constant sigma gives c * identity") {
    BoundarySymbol s = make_sigma({{0, 0.7}});
    std::vector<int> basis{-3, -1, 1, 3};
    auto m = multiplication_matrix(s, basis);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(std::abs(m(i, j) - (i == j ? cplx(0.7) : cplx(0))) < 1e-15);
  }
  SUBCASE("2 cos phi couples indices one apart") {
    BoundarySymbol s = make_sigma({{1, 1.0}});
    auto adj = multiplication_matrix(s, std::vector<int>{0, 1});
    CHECK(std::abs(adj(0, 0)) == 0.0);
    CHECK(std::abs(adj(1, 1)) == 0.0);
    CHECK(std::abs(adj(0, 1) - cplx(1)) < 1e-15);
    // on {-1, 1} every index difference misses the support of sigma_hat,
    // so the compression vanishes identically
    auto gap2 = multiplication_matrix(s, std::vector<int>{-1, 1});
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(gap2(i, j)) == 0.0);
  }
  SUBCASE("1 + cos 2phi on {-2, 0, 2}") {
    BoundarySymbol s = make_sigma({{0, 1.0}, {2, 0.5}});
    std::vector<int> basis{-2, 0, 2};
    auto m = multiplication_matrix(s, basis);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(m(i, i) - cplx(1)) < 1e-15);
    CHECK(std::abs(m(0, 1) - cplx(0.5)) < 1e-15);
    CHECK(std::abs(m(1, 2) - cplx(0.5)) < 1e-15);
    CHECK(std::abs(m(0, 2)) == 0.0);
  }
  SUBCASE("operator norm bounded by sup |sigma|") {
    BoundarySymbol s = make_sigma({{0, 1.0}, {1, cplx(0.25, 0.3)}, {2, 0.5}});
    std::vector<int> basis;
    for (int m = -8; m <= 8; ++m) basis.push_back(m);
    auto mm = multiplication_matrix(s, basis);
    auto ev = num::hermitian_eigenvalues(mm);
    double opnorm = std::max(std::abs(ev.front()), std::abs(ev.back()));
    CHECK(opnorm <= s.sup_norm() + 1e-12);
  }
}

TEST_CASE("convolution_matrix is diagonal with the sequence entries") {
  harm::SymbolSequence y = harm::symbol(6, harm::SymbolKind::y);
  harm::SymbolSequence x = harm::symbol(6, harm::SymbolKind::x);
  std::vector<int> basis;
  for (int m = -6; m <= 6; m += 2) basis.push_back(m);
  auto cy = convolution_matrix(y, basis);
  auto cx = convolution_matrix(x, basis);
  harm::AmplitudeDiagnostics diag = harm::amplitude_diagnostics(6);
  double sup = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    sup = std::max(sup, std::abs(cx(i, i)) * std::abs(cx(i, i)));
    CHECK(std::abs(cx(i, i) * cx(i, i) - cy(i, i)) < 1e-13);  // C[x]^2 = C[y]
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (i != j) CHECK(std::abs(cy(i, j)) == 0.0);
  }
  CHECK(sup == doctest::Approx(diag.sup_a2).epsilon(1e-12));
}

TEST_CASE("sigma JSON ingestion") {
  BoundarySymbol s = from_json(R"({"type":"coeffs","coeffs":[[0,1.0,0],[2,0.5,0],[-2,0.5,0]]})");
  CHECK(s.degree() == 2);
  CHECK(std::abs(s.coeff(2) - cplx(0.5)) < 1e-15);

  BoundarySymbol s2 = from_json(
      R"({"type":"samples","values":[2,0.58578643762690495,-2,3.4142135623730949,2,0.58578643762690495,-2,3.4142135623730949],"degree":1})");
  CHECK(s2.degree() == 1);

  CHECK_THROWS_WITH_AS(from_json("{}"), "sigma JSON: missing string field 'type'",
                       std::invalid_argument);
  CHECK_THROWS_AS(from_json(R"({"type":"coeffs"})"), std::invalid_argument);
  CHECK_THROWS_AS(from_json(R"({"type":"coeffs","coeffs":[[1,1,1]]})"), std::invalid_argument);
  CHECK_THROWS_AS(from_json("not json"), std::invalid_argument);

  // round trip through to_json
  BoundarySymbol s3 = from_json(to_json(s));
  for (int k = -2; k <= 2; ++k) CHECK(std::abs(s3.coeff(k) - s.coeff(k)) == 0.0);
}

TEST_CASE("abs_symbol is exact for sign-definite sigma") {
  BoundarySymbol s = make_sigma({{0, 1.0}, {2, 0.5}});  // >= 0 pointwise
  BoundarySymbol a = abs_symbol(s, 8);
  for (int k = -8; k <= 8; ++k) CHECK(std::abs(a.coeff(k) - s.coeff(k)) < 1e-12);
}
