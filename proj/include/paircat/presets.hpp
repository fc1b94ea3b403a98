#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace paircat {

/// A configuration shipped with the tool, embedded verbatim from presets/.
struct Preset {
  std::string_view name;
  std::string_view text;
};

std::span<const Preset> presets();
std::optional<Preset> find_preset(std::string_view name);

}  // namespace paircat
