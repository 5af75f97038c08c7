#ifndef STAP_CLI_PRESETS_HPP
#define STAP_CLI_PRESETS_HPP

#include <string>
#include <vector>

#include "stap/cli/config.hpp"

namespace stap::cli {

enum class PresetKind { SIMULATE, SWEEP, PULSES };

struct Preset {
  std::string name;
  PresetKind kind = PresetKind::SIMULATE;
  json config;
  std::string note;  // the adopted axis-range / parameter assumptions
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);

}  // namespace stap::cli

#endif
