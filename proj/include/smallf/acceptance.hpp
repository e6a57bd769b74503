#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "smallf/serialize.hpp"

namespace smallf {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // deterministic; no timings
  Json measured = Json::object();
  double seconds = 0;  // wall time, manifest only
};

struct AcceptanceConfig {
  std::uint64_t seed = 0;
  /// Criterion ids to run; empty runs all 14.
  std::vector<int> only;
  /// Thread counts compared by the determinism criterion.
  std::vector<int> determinism_threads{1, 4, 8};
};

constexpr int kCriterionCount = 14;

/// Runs the criteria in id order at the current parallelism. The determinism
/// criterion reruns 1..13 at each configured thread count and compares the
/// serialized results with those of the main run.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "criterion 3 PASS union-bound: ..." per line.
std::string render_line(const CriterionResult& r);
std::string render_lines(const std::vector<CriterionResult>& rs);
/// Deterministic JSON of the results; timings are added only when asked.
Json results_json(const std::vector<CriterionResult>& rs, bool with_timing = false);

}  // namespace smallf
