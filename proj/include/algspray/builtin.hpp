#pragma once

#include <span>

#include "algspray/scenario.hpp"

namespace algspray {

// Reference scenarios compiled into the library; the same text ships as
// files under scenarios/.
struct BuiltinScenario {
  const char* name;
  const char* text;
};

std::span<const BuiltinScenario> builtin_scenarios();

// throws ScenarioError for an unknown name
Scenario builtin_scenario(std::string_view name);

}  // namespace algspray
