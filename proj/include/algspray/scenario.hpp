#pragma once

#include <map>
#include <string>

#include "algspray/connection.hpp"
#include "algspray/expr.hpp"

namespace algspray {

// Scenario file rejection; the message carries "line N" when a specific
// input line is at fault.
class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CheckRequest {
  enum class Kind { LieSymmetry, Collineation };
  Kind kind;
  std::string section;
};

// A parsed scenario file.  Expressions are kept as parse trees; build_* turn
// them into evaluable fields on demand.
struct Scenario {
  int n = 0;
  int m = 0;
  std::vector<std::vector<ExprPtr>> rho;  // [i][alpha], never null
  struct LEntry {
    int gamma, alpha, beta;  // zero-based, alpha < beta
    ExprPtr value;
  };
  std::vector<LEntry> L;                        // sorted (gamma, alpha, beta)
  std::vector<ExprPtr> spray;                   // [alpha], never null
  std::map<std::string, std::vector<ExprPtr>> sections;
  std::vector<CheckRequest> checks;
  std::map<std::string, double> tolerances;  // keys: tol, structure_tol, ...
  SamplingConfig sampling;

  AlgebroidStructure build_algebroid() const;
  Spray build_spray() const;
  BaseSection build_section(const std::string& name) const;

  // Deterministic normalized rendering: canonical expression printing, fixed
  // key order.  Semantically identical files serialize identically.
  std::string canonical_text() const;
  // "fnv1a64:" + 16 hex digits of the canonical text
  std::string digest() const;
};

Scenario load_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::string& path);

uint64_t fnv1a64(std::string_view data);

}  // namespace algspray
