#include <string>

#include "doctest.h"
#include "hemirobin/verify.hpp"
#include "json.hpp"

using namespace hemirobin::verify;

TEST_CASE("verdict JSON round-trips through the loader") {
  std::vector<CriterionResult> results{
      {1, "amplitude-consistency", 1.2e-13, 1e-9, true, "max_rel_dev=..."},
      {8, "gap-sandwich", -0.01, 0.0, true, "margins ok"},
      {10, "sl1d-factor-2", 0.9, 0.5, false, "ladder broke"}};
  nlohmann::json j = nlohmann::json::parse(verdict_json(results));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(j[i]["criterion"] == results[i].id);
    CHECK(j[i]["name"] == results[i].name);
    CHECK(double(j[i]["measured"]) == doctest::Approx(results[i].measured));
    CHECK(double(j[i]["bound"]) == doctest::Approx(results[i].bound));
    CHECK(bool(j[i]["pass"]) == results[i].pass);
  }
  CHECK_FALSE(all_pass(results));
  results.pop_back();
  CHECK(all_pass(results));
  CHECK_FALSE(all_pass({}));
}

TEST_CASE("amplitude consistency is sensitive to a 1% amplitude perturbation") {
  // the clean measurement sits far below the bound; a 1% scale error on the
  // Gamma-route amplitudes must blow through it
  CHECK(amplitude_consistency_worst(60, 0.0) <= 1e-9);
  CHECK(amplitude_consistency_worst(60, 0.01) > 1e-3);
}
