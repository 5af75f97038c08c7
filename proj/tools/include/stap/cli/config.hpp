#ifndef STAP_CLI_CONFIG_HPP
#define STAP_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "stap/dynamics.hpp"
#include "stap/model.hpp"

namespace stap::cli {

using nlohmann::json;

// Single-run configuration shared by `simulate` and `pulses`.
struct RunConfig {
  SchemeSpec spec;
  PulseKind kind = PulseKind::STAP;
  double amp = 1.0;
  double exponent = 1.2;
  double amp_ratio = 0.5;
  bool open_system = false;
  int steps = 2000;
  int samples = 1001;
  std::string output;

  PulseProtocol protocol() const;
  bool operator==(const RunConfig&) const = default;
};

struct SweepAxis {
  std::string name;  // v, t_f, epsilon, kappa_c, kappa_f, gamma, Upsilon, each_decay
  std::vector<double> values;

  bool operator==(const SweepAxis&) const = default;
};

struct ProtocolChoice {
  PulseKind kind = PulseKind::STAP;
  double amp = 1.0;
  double exponent = 1.2;
  double amp_ratio = 0.5;
  bool operator==(const ProtocolChoice&) const = default;
};

struct SweepConfig {
  SchemeSpec spec;  // fixed parameters
  std::vector<ProtocolChoice> protocols;
  std::vector<SweepAxis> axes;            // 1 or 2
  std::vector<std::string> observables;   // final_fidelity, max_phi0, max_mu1, max_mu2
  std::optional<bool> open_system;
  int steps = 2000;
  std::string output;

  bool operator==(const SweepConfig&) const = default;
};

RunConfig parse_run_config(const json& doc);
SweepConfig parse_sweep_config(const json& doc);
json to_json(const RunConfig& config);
json to_json(const SweepConfig& config);

json load_json_file(const std::string& path);

std::string pulse_kind_name(PulseKind kind);
PulseKind pulse_kind_from_name(const std::string& name);

// 12-significant-digit shortest representation used in every CSV.
std::string format_number(double x);

}  // namespace stap::cli

#endif
