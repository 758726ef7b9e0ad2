#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "hemirobin/hemirobin.h"

namespace {
const char* kOnePlusCos2 = R"({"type":"coeffs","coeffs":[[0,1.0,0],[2,0.5,0],[-2,0.5,0]]})";
}

TEST_CASE("version and error surface") {
  CHECK(std::string(hr_version()) == "1.0.0");
  hr_sigma* s = nullptr;
  CHECK(hr_sigma_from_json("not json", &s) == HR_EINVAL);
  CHECK(std::string(hr_last_error()).find("sigma JSON") != std::string::npos);
  CHECK(hr_sigma_from_json(nullptr, &s) == HR_EINVAL);
}

TEST_CASE("sigma handles") {
  hr_sigma* s = nullptr;
  REQUIRE(hr_sigma_from_json(kOnePlusCos2, &s) == HR_OK);
  CHECK(hr_sigma_degree(s) == 2);
  double v = 0;
  CHECK(hr_sigma_evaluate(s, 0.0, &v) == HR_OK);
  CHECK(v == doctest::Approx(2.0));
  hr_sigma_free(s);

  double re[3] = {1.0, 0.0, 1.0};  // c_{-1} = c_1 = 1: sigma = 2 cos phi
  double im[3] = {0.0, 0.0, 0.0};
  REQUIRE(hr_sigma_from_coeffs(1, re, im, &s) == HR_OK);
  CHECK(hr_sigma_evaluate(s, 0.0, &v) == HR_OK);
  CHECK(v == doctest::Approx(2.0));
  hr_sigma_free(s);
}

TEST_CASE("gap spectrum and trace through the C surface") {
  hr_sigma* s = nullptr;
  REQUIRE(hr_sigma_from_json(kOnePlusCos2, &s) == HR_OK);
  double gaps[2];
  REQUIRE(hr_gap_spectrum(s, 1, gaps) == HR_OK);
  CHECK(gaps[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(gaps[1] == doctest::Approx(2.25).epsilon(1e-12));
  double tr = 0;
  REQUIRE(hr_cluster_trace(s, 1, &tr) == HR_OK);
  CHECK(tr == doctest::Approx(3.0).epsilon(1e-12));
  double lo[6], hi[6];
  REQUIRE(hr_sandwich_spectra(s, 5, 0.1, lo, hi) == HR_OK);
  for (int k = 0; k < 6; ++k) CHECK(lo[k] <= hi[k]);
  hr_sigma_free(s);
}

TEST_CASE("test functions and density through the C surface") {
  hr_sigma* s = nullptr;
  REQUIRE(hr_sigma_from_json(R"({"type":"coeffs","coeffs":[[0,1.0,0]]})", &s) == HR_OK);
  double cx[2] = {0.0, 1.0};
  hr_testfn* f = nullptr;
  REQUIRE(hr_testfn_create(cx, 2, 0.0, &f) == HR_OK);
  double lim = 0;
  REQUIRE(hr_limit_functional(s, f, &lim) == HR_OK);
  CHECK(lim == doctest::Approx(2.0).epsilon(1e-9));
  double w[3];
  REQUIRE(hr_weinstein(s, f, w) == HR_OK);
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(w[2] <= 1e-10);
  double rho = 0;
  REQUIRE(hr_rho_density(s, 5.0, &rho) == HR_OK);
  CHECK(rho > 0);
  CHECK(hr_rho_density(s, 0.0, &rho) == HR_EDOMAIN);

  double bad[2] = {1.0, 1.0};  // f(0) != 0
  hr_testfn* g = nullptr;
  CHECK(hr_testfn_create(bad, 2, 0.0, &g) == HR_EINVAL);
  hr_testfn_free(f);
  hr_sigma_free(s);
}

TEST_CASE("galerkin spectrum and windows through the C surface") {
  hr_sigma* s = nullptr;
  REQUIRE(hr_sigma_from_json(R"({"type":"coeffs","coeffs":[[0,1.0,0]]})", &s) == HR_OK);
  double* evals = nullptr;
  size_t count = 0;
  REQUIRE(hr_robin_spectrum(s, 12, &evals, &count) == HR_OK);
  CHECK(count == 169);
  for (size_t i = 1; i < count; ++i) CHECK(evals[i - 1] <= evals[i]);
  int totals[4] = {0, 0, 0, 0};
  size_t stragglers = 99;
  REQUIRE(hr_window_counts(evals, count, 10.0, 2, 5, 36.0, totals, &stragglers) == HR_OK);
  CHECK(totals[0] == 3);
  CHECK(totals[1] == 4);
  CHECK(stragglers == 0);
  hr_free_doubles(evals);
  hr_sigma_free(s);
}

TEST_CASE("odd construction through the C surface") {
  hr_sigma* s = nullptr;
  REQUIRE(hr_sigma_from_json(R"({"type":"coeffs","coeffs":[[1,1.0,0],[-1,1.0,0]]})", &s) == HR_OK);
  int dim = 0;
  double res = 1, scale = 0;
  REQUIRE(hr_odd_construction(s, 6, &dim, &res, &scale) == HR_OK);
  CHECK(dim == 5);
  CHECK(res <= 1e-10 * scale);
  hr_sigma_free(s);
}

TEST_CASE("1d eigenvalues through the C surface") {
  double lam = 0;
  REQUIRE(hr_sl_robin_eigenvalue(1.0, 10, &lam) == HR_OK);
  CHECK(lam > 0);
  double mu = 0;
  REQUIRE(hr_sl_step_eigenvalue(1.0, 0.1, 10, &mu) == HR_OK);
  CHECK(std::abs(mu - lam) < 1.5);
  CHECK(hr_sl_robin_eigenvalue(1.0, 0, &lam) == HR_EINVAL);
  CHECK(hr_sl_step_eigenvalue(1.0, 2.0, 3, &mu) == HR_EINVAL);
}
