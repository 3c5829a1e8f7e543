#include <doctest.h>

#include <algorithm>

#include "algspray/builtin.hpp"
#include "algspray/runner.hpp"

using namespace algspray;

namespace {

const Report run_text(const std::string& text, RunOptions opt = {}) {
  return run_checks(load_scenario_text(text), opt);
}

const CheckResult& find(const Report& r, const std::string& name) {
  auto it = std::find_if(r.checks.begin(), r.checks.end(),
                         [&](const CheckResult& c) { return c.name == name; });
  REQUIRE(it != r.checks.end());
  return *it;
}

}  // namespace

TEST_CASE("full battery passes on the embedded scenarios") {
  for (const auto& b : builtin_scenarios()) {
    CAPTURE(b.name);
    Report r = run_checks(load_scenario_text(b.text));
    CHECK(r.all_pass());
    CHECK(r.points == 100);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CHECK(c.verdict == Verdict::Pass);
      CHECK(c.points_skipped == 0);
    }
  }
}

TEST_CASE("check order is structural first, dual-path last") {
  Report r = run_checks(builtin_scenario("so3_spray"));
  std::vector<std::string> names;
  for (const auto& c : r.checks) names.push_back(c.name);
  std::vector<std::string> want = {
      "structure_equations_i",   "structure_equations_ii",
      "spray_homogeneity",       "bracket_frame",
      "bracket_adapted",         "bracket_jacobi",
      "lie_symmetry:eta_e1",     "lie_symmetry_xresidual:eta_e1",
      "lie_symmetry_agreement:eta_e1",
      "collineation:eta_e1:K",   "collineation:eta_e1:R",
      "collineation:eta_e1:H",   "collineation:eta_e1:W0",
      "collineation:eta_e1:W",   "collineation:eta_e1:Wstar",
      "collineation:eta_e1:B",   "collineation:eta_e1:D",
      "dual_path_K",             "dual_path_W0",
  };
  CHECK(names == want);
}

TEST_CASE("structure failure short-circuits everything downstream") {
  // an extra constant entry breaks the cyclic identity
  Report r = run_text(
      "[algebroid]\nn = 0\nm = 3\n"
      "L[3][1,2] = \"1\"\nL[1][2,3] = \"1\"\nL[2][1,3] = \"-1\"\nL[1][1,3] = \"1\"\n"
      "[section e1]\ncomp[1] = \"1\"\n"
      "[check]\nlie_symmetry = \"e1\"\ncollineation = \"e1\"\n");
  CHECK_FALSE(r.all_pass());
  CHECK(find(r, "structure_equations_ii").verdict == Verdict::Fail);
  for (const auto& c : r.checks) {
    if (c.name.rfind("structure_", 0) == 0) continue;
    CAPTURE(c.name);
    CHECK(c.verdict == Verdict::Skipped);
    CHECK(c.points_evaluated == 0);
  }
  // the skipped battery still lists the would-be checks by name
  find(r, "lie_symmetry:e1");
  find(r, "collineation:e1:Wstar");
  find(r, "dual_path_K");
}

TEST_CASE("non-symmetry yields a fail verdict with the expected magnitude") {
  Report r = run_text(
      "[algebroid]\nn = 2\nm = 2\nrho[1][1] = \"1\"\nrho[2][2] = \"1\"\n"
      "[section bad]\ncomp[1] = \"x1^2\"\ncomp[2] = \"0\"\n"
      "[check]\nlie_symmetry = \"bad\"\n");
  CHECK_FALSE(r.all_pass());
  const CheckResult& c = find(r, "lie_symmetry:bad");
  CHECK(c.verdict == Verdict::Fail);
  // residual is 2 y1^2 with |y1| <= 2
  CHECK(c.residual_max > 0.5);
  CHECK(c.residual_max <= 8.0 + 1e-9);
  // the transcription checks still pass
  CHECK(find(r, "lie_symmetry_xresidual:bad").verdict == Verdict::Pass);
  CHECK(find(r, "lie_symmetry_agreement:bad").verdict == Verdict::Pass);
}

TEST_CASE("per-kind tolerance beats the generic override which beats the default") {
  const std::string base =
      "[algebroid]\nn = 2\nm = 2\nrho[1][1] = \"1\"\nrho[2][2] = \"1\"\n"
      "[section bad]\ncomp[1] = \"x1^2\"\ncomp[2] = \"0\"\n"
      "[check]\nlie_symmetry = \"bad\"\n";

  // generous per-kind tolerance turns the verdict around
  Report lax = run_text(base + "symmetry_tol = 100\n");
  CHECK(find(lax, "lie_symmetry:bad").verdict == Verdict::Pass);
  CHECK(find(lax, "lie_symmetry:bad").tolerance == doctest::Approx(100.0));

  // a generic CLI-style override does not outrank the per-kind key
  RunOptions strict;
  strict.tol = 1e-12;
  Report still_lax = run_text(base + "symmetry_tol = 100\n", strict);
  CHECK(find(still_lax, "lie_symmetry:bad").verdict == Verdict::Pass);

  // without the per-kind key the override applies to every check
  RunOptions loose;
  loose.tol = 100.0;
  Report all_loose = run_text(base, loose);
  CHECK(find(all_loose, "lie_symmetry:bad").verdict == Verdict::Pass);

  // scenario-level generic tol is weaker than the override
  Report o = run_text(base + "tol = 100\n", strict);
  CHECK(find(o, "lie_symmetry:bad").verdict == Verdict::Fail);
}

TEST_CASE("points and seed overrides land in the report") {
  RunOptions opt;
  opt.points = 13;
  opt.seed = 99;
  Report r = run_checks(builtin_scenario("so3"), opt);
  CHECK(r.points == 13);
  CHECK(r.seed == 99);
  for (const auto& c : r.checks) CHECK(c.points_evaluated == 13);
}

TEST_CASE("undefined evaluations at many points make a check inconclusive") {
  // sqrt(x1) fails on half of the sampled base points
  Report r = run_text(
      "[algebroid]\nn = 1\nm = 2\nrho[1][1] = \"1\"\n"
      "[section odd]\ncomp[1] = \"sqrt(x1)\"\ncomp[2] = \"0\"\n"
      "[check]\nlie_symmetry = \"odd\"\n");
  CHECK_FALSE(r.all_pass());
  const CheckResult& c = find(r, "lie_symmetry:odd");
  CHECK(c.verdict == Verdict::Inconclusive);
  CHECK(c.points_skipped > 10);
  CHECK(c.points_evaluated + c.points_skipped == 100);
  // structure checks never touch the section and stay green
  CHECK(find(r, "structure_equations_i").verdict == Verdict::Pass);
}

TEST_CASE("reports serialize deterministically") {
  Report a = run_checks(builtin_scenario("flat_r2"));
  Report b = run_checks(builtin_scenario("flat_r2"));
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_json().find("\"engine_version\"") != std::string::npos);
  CHECK(a.to_json().find("\"verdict\": \"pass\"") != std::string::npos);
  // wall time is presentation-only: it must not leak into the JSON
  CHECK(a.to_json().find("seconds") == std::string::npos);
  CHECK(a.to_text(1.25).find("overall: pass") != std::string::npos);
}

TEST_CASE("verdict names") {
  CHECK(std::string(verdict_name(Verdict::Pass)) == "pass");
  CHECK(std::string(verdict_name(Verdict::Fail)) == "fail");
  CHECK(std::string(verdict_name(Verdict::Skipped)) == "skipped");
  CHECK(std::string(verdict_name(Verdict::Inconclusive)) == "inconclusive");
}
