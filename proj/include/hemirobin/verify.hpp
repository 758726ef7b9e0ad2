#ifndef HEMIROBIN_VERIFY_HPP
#define HEMIROBIN_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

namespace hemirobin::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  double measured = 0;  // worst-case measured quantity for the criterion
  double bound = 0;     // the bound it must satisfy
  bool pass = false;
  std::string detail;   // human-readable summary of the sub-checks
  double seconds = 0;   // wall time spent on this criterion
};

struct Options {
  unsigned seed = 20240817;  // seed for the randomized trials
};

/// Runs the full acceptance suite; `progress` (when set) is invoked after
/// each criterion finishes. Results come back in criterion order.
std::vector<CriterionResult> run_all(const Options& opts,
                                     const std::function<void(const CriterionResult&)>& progress = {});

bool all_pass(const std::vector<CriterionResult>& results);

/// Worst relative deviation between the Gamma-route amplitudes (scaled by
/// 1 + perturbation) and the Legendre-recurrence route, over ell <= ell_max.
/// perturbation = 0 is the production measurement of criterion 1; a nonzero
/// value is the sensitivity hook used by the tests.
double amplitude_consistency_worst(int ell_max, double perturbation);

/// Machine-readable verdict: [{"criterion":..,"name":..,"measured":..,
/// "bound":..,"pass":..,"detail":..}, ...].
std::string verdict_json(const std::vector<CriterionResult>& results);

}  // namespace hemirobin::verify

#endif
