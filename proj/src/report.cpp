#include "algspray/report.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace algspray {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.verdict == Verdict::Pass; });
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["engine_version"] = kEngineVersion;
  j["scenario_digest"] = scenario_digest;
  j["points"] = points;
  j["seed"] = seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["residual_max"] = c.residual_max;
    e["residual_mean"] = c.residual_mean;
    e["points_evaluated"] = c.points_evaluated;
    e["points_skipped"] = c.points_skipped;
    e["tolerance"] = c.tolerance;
    e["verdict"] = verdict_name(c.verdict);
    j["checks"].push_back(std::move(e));
  }
  j["verdict"] = all_pass() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

std::string Report::to_text(double wall_seconds) const {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "scenario digest  %s\nengine version   %s\npoints / seed    %d / %llu\n\n",
                scenario_digest.c_str(), kEngineVersion, points,
                static_cast<unsigned long long>(seed));
  out += buf;
  size_t width = 4;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::snprintf(buf, sizeof buf, "%-*s  %-12s  %-12s  %5s  %5s  %-9s  %s\n",
                static_cast<int>(width), "name", "residual_max", "residual_mean", "pts",
                "skip", "tol", "verdict");
  out += buf;
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%-*s  %-12.3e  %-12.3e  %5d  %5d  %-9.1e  %s\n",
                  static_cast<int>(width), c.name.c_str(), c.residual_max, c.residual_mean,
                  c.points_evaluated, c.points_skipped, c.tolerance, verdict_name(c.verdict));
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "\noverall: %s  (%.2f s)\n", all_pass() ? "pass" : "fail",
                wall_seconds);
  out += buf;
  return out;
}

}  // namespace algspray
