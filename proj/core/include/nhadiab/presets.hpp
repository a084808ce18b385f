#pragma once

// Built-in scenarios with the parameter sets of the published figures.

#include <string>
#include <vector>

#include "nhadiab/scenario.hpp"

namespace nhadiab {

struct PresetInfo {
  std::string name;
  std::string caption;
};

std::vector<PresetInfo> list_presets();
bool has_preset(const std::string& name);
/// Throws ScenarioError with path "preset" for unknown names.
Scenario preset(const std::string& name);
/// The embedded YAML source of a preset.
std::string preset_source(const std::string& name);

}  // namespace nhadiab
