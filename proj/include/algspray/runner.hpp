#pragma once

#include <optional>

#include "algspray/report.hpp"
#include "algspray/scenario.hpp"

namespace algspray {

struct RunOptions {
  std::optional<int> points;      // override the scenario sampling block
  std::optional<uint64_t> seed;
  std::optional<double> tol;      // generic tolerance override; per-type keys
                                  // in the scenario still win
  bool denominators_use_base_dim = false;
};

// Runs the full check battery: structure equations, spray homogeneity,
// frame/adapted bracket tables, Jacobi identity, requested symmetry and
// collineation checks, dual-path consistency.  A structure-equation failure
// skips everything downstream.
Report run_checks(const Scenario& sc, const RunOptions& opt = {});

}  // namespace algspray
