#pragma once

// The ten acceptance checks as one battery, shared by the acceptance test
// binary and `gskit repro`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gskit {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  int threads = 1;
  int map_nk = 200, map_nF = 200;
  std::vector<int> only;  ///< empty: all criteria
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

/// "criterion N: PASS|FAIL  title  [detail] (t s)"
std::string format_line(const CriterionResult& r);

}  // namespace gskit
