#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace algspray {

inline constexpr const char* kEngineVersion = "0.1.0";

enum class Verdict { Pass, Fail, Skipped, Inconclusive };

const char* verdict_name(Verdict v);

struct CheckResult {
  std::string name;
  double residual_max = 0.0;
  double residual_mean = 0.0;
  int points_evaluated = 0;
  int points_skipped = 0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Pass;
};

// Everything in the report is a deterministic function of the scenario and
// the run options; wall time is deliberately not a field (it goes only into
// the human-readable rendering) so JSON output is reproducible byte for byte.
struct Report {
  std::string scenario_digest;
  int points = 0;
  uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  std::string to_json() const;
  std::string to_text(double wall_seconds) const;
};

}  // namespace algspray
