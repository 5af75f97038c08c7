#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "stap/cli/commands.hpp"
#include "stap/cli/presets.hpp"

using namespace stap::cli;

namespace {

json reference_run_doc() {
  return {{"units", "lambda"}, {"scheme", "FPT"}, {"epsilon", std::asin(0.25)},
          {"t_f", 10.0},       {"v", 1.0}};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path(temp_path(name)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::vector<double> column(const std::string& csv, size_t col) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> out;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string field;
    for (size_t c = 0; c <= col; ++c) std::getline(row, field, ',');
    out.push_back(std::stod(field));
  }
  return out;
}

}  // namespace

TEST_CASE("run config parsing is strict") {
  RunConfig config = parse_run_config(reference_run_doc());
  CHECK(config.spec.scheme == stap::Scheme::FPT);
  CHECK(config.steps == 2000);

  json no_units = reference_run_doc();
  no_units.erase("units");
  CHECK_THROWS_WITH_AS(parse_run_config(no_units), doctest::Contains("units"),
                       std::invalid_argument);

  json unknown = reference_run_doc();
  unknown["detuning"] = 0.1;
  CHECK_THROWS_WITH_AS(parse_run_config(unknown), doctest::Contains("detuning"),
                       std::invalid_argument);

  json zero_eps = reference_run_doc();
  zero_eps["epsilon"] = 0.0;
  CHECK_THROWS_WITH_AS(parse_run_config(zero_eps), doctest::Contains("diverge"),
                       std::invalid_argument);

  json negative_rate = reference_run_doc();
  negative_rate["kappa_c"] = -0.01;
  CHECK_THROWS_AS(parse_run_config(negative_rate), std::invalid_argument);
}

TEST_CASE("run config round-trips through serialization") {
  json doc = reference_run_doc();
  doc["protocol"] = {{"kind", "ADIABATIC_EXP"}, {"exponent", 1.2}, {"amp_ratio", 0.5}};
  doc["open_system"] = true;
  doc["kappa_c"] = 0.05;
  doc["steps"] = 500;
  RunConfig config = parse_run_config(doc);
  CHECK(parse_run_config(to_json(config)) == config);
}

TEST_CASE("sweep config parsing and round-trip") {
  json doc = {{"units", "lambda"},
              {"scheme", "FPT"},
              {"fixed", {{"epsilon", std::asin(0.25)}, {"kappa_c", 0.05}}},
              {"protocols", json::array({{{"kind", "STAP"}}, {{"kind", "ADIABATIC_TRIG"}}})},
              {"axes", json::array({{{"name", "t_f"}, {"start", 9.0}, {"stop", 12.0},
                                     {"count", 4}}})},
              {"observables", {"final_fidelity", "max_mu2"}}};
  SweepConfig config = parse_sweep_config(doc);
  CHECK(config.protocols.size() == 2);
  CHECK(config.axes.size() == 1);
  CHECK(config.axes[0].values.size() == 4);
  CHECK(parse_sweep_config(to_json(config)) == config);

  json conflicted = doc;
  conflicted["axes"].push_back({{"name", "Upsilon"}, {"start", 0.0}, {"stop", 0.1}, {"count", 3}});
  conflicted["axes"].push_back({{"name", "gamma"}, {"start", 0.0}, {"stop", 0.1}, {"count", 3}});
  CHECK_THROWS_AS(parse_sweep_config(conflicted), std::invalid_argument);

  json unsorted = doc;
  unsorted["axes"] = json::array({{{"name", "t_f"}, {"values", {10.0, 9.0}}}});
  CHECK_THROWS_WITH_AS(parse_sweep_config(unsorted), doctest::Contains("increasing"),
                       std::invalid_argument);

  json bad_obs = doc;
  bad_obs["observables"] = {"max_mu9"};
  CHECK_THROWS_AS(parse_sweep_config(bad_obs), std::invalid_argument);
}

TEST_CASE("figure presets expand to parseable configs") {
  const char* names[] = {"fig2",  "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b",
                         "fig4c", "fig4d", "fig5a", "fig5b", "fig5c", "fig5d", "fig5e",
                         "fig5f", "fig6a", "fig6b", "fig7a", "fig7b", "fig8a", "fig8b"};
  CHECK(presets().size() == sizeof(names) / sizeof(names[0]));
  for (const char* name : names) {
    const Preset& preset = find_preset(name);
    CHECK(!preset.note.empty());
    if (preset.kind == PresetKind::SWEEP)
      CHECK_NOTHROW(parse_sweep_config(preset.config));
    else
      CHECK_NOTHROW(parse_run_config(preset.config));
  }
  CHECK_THROWS_AS(find_preset("fig99"), std::invalid_argument);
}

TEST_CASE("pulse table export") {
  TempFile file("stap_test_pulses.csv");
  RunConfig config = parse_run_config(reference_run_doc());
  config.output = file.path;
  std::ostringstream log;
  CHECK(cmd_pulses(config, log) == 0);
  std::string csv = slurp(file.path);
  CHECK(csv.rfind("t,omega1,omega2\n", 0) == 0);

  auto max_of = [&](const std::string& text, size_t col) {
    std::vector<double> values = column(text, col);
    REQUIRE(values.size() == 1001);
    return *std::max_element(values.begin(), values.end());
  };
  double omega0 = std::sqrt(45.0) * M_PI / 20.0;
  CHECK(std::abs(max_of(csv, 1) - omega0) <= 1e-9);

  RunConfig slow = config;
  slow.spec.t_f = 20.0;
  CHECK(cmd_pulses(slow, log) == 0);
  CHECK(std::abs(max_of(slurp(file.path), 1) - 0.5 * omega0) <= 1e-9);

  RunConfig exp_config = config;
  exp_config.kind = stap::PulseKind::ADIABATIC_EXP;
  CHECK(cmd_pulses(exp_config, log) == 0);
  CHECK(std::abs(max_of(slurp(file.path), 1) - 0.5) <= 1e-9);
}

TEST_CASE("single-run command writes the trajectory and reports the fidelity") {
  TempFile file("stap_test_traj.csv");
  RunConfig config = parse_run_config(reference_run_doc());
  config.output = file.path;
  std::ostringstream log;
  CHECK(cmd_simulate(config, log) == 0);
  CHECK(log.str().rfind("final_fidelity=", 0) == 0);
  CHECK(std::stod(log.str().substr(15)) >= 0.99);

  std::string csv = slurp(file.path);
  CHECK(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')) == 1002);
  CHECK(csv.rfind("t,f g;00;0,", 0) == 0);
  CHECK(csv.find(",fidelity\n") != std::string::npos);

  // the open-system integrator propagates a density matrix, so with zero decay
  // rates it agrees with the closed run numerically but not byte-for-byte
  RunConfig open_config = config;
  open_config.open_system = true;
  TempFile open_file("stap_test_traj_open.csv");
  open_config.output = open_file.path;
  CHECK(cmd_simulate(open_config, log) == 0);
  std::string open_csv = slurp(open_file.path);
  CHECK(open_csv.substr(0, open_csv.find('\n')) == csv.substr(0, csv.find('\n')));
  std::vector<double> closed_fid = column(csv, 15), open_fid = column(open_csv, 15);
  REQUIRE(closed_fid.size() == open_fid.size());
  for (size_t k = 0; k < closed_fid.size(); ++k)
    CHECK(std::abs(closed_fid[k] - open_fid[k]) <= 1e-8);
}

TEST_CASE("sweeps are byte-identical across worker counts") {
  json doc = {{"units", "lambda"},
              {"scheme", "FPT"},
              {"fixed", {{"epsilon", std::asin(0.25)}, {"gamma", 0.05}}},
              {"axes", json::array({{{"name", "t_f"}, {"values", {9.0, 10.0, 11.0}}}})},
              {"steps", 400}};
  SweepConfig config = parse_sweep_config(doc);
  TempFile one("stap_test_sweep1.csv"), many("stap_test_sweep4.csv");
  std::ostringstream log;
  config.output = one.path;
  CHECK(cmd_sweep(config, 1, log) == 0);
  config.output = many.path;
  CHECK(cmd_sweep(config, 4, log) == 0);
  std::string csv = slurp(one.path);
  CHECK(csv == slurp(many.path));
  CHECK(csv.rfind("t_f,final_fidelity\n", 0) == 0);
  CHECK(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')) == 4);
}

TEST_CASE("single-cell sweep agrees with the single-run summary") {
  json sweep_doc = {{"units", "lambda"},
                    {"scheme", "FPT"},
                    {"fixed", {{"epsilon", std::asin(0.25)}}},
                    {"axes", json::array({{{"name", "t_f"}, {"values", {10.0}}}})}};
  SweepConfig sweep_config = parse_sweep_config(sweep_doc);
  TempFile sweep_file("stap_test_sweep_cell.csv");
  sweep_config.output = sweep_file.path;
  std::ostringstream log;
  CHECK(cmd_sweep(sweep_config, 1, log) == 0);
  double from_sweep = column(slurp(sweep_file.path), 1).at(0);

  RunConfig run_config = parse_run_config(reference_run_doc());
  run_config.samples = 201;
  TempFile run_file("stap_test_run_cell.csv");
  run_config.output = run_file.path;
  std::ostringstream run_log;
  CHECK(cmd_simulate(run_config, run_log) == 0);
  double from_run = std::stod(run_log.str().substr(15));
  CHECK(from_sweep == doctest::Approx(from_run).epsilon(1e-12));
}

TEST_CASE("verification command is idempotent and mutation-sensitive") {
  std::ostringstream first, second, mutated;
  CHECK(cmd_verify(false, first) == 0);
  CHECK(cmd_verify(false, second) == 0);
  CHECK(first.str() == second.str());
  CHECK(first.str().find("FAIL") == std::string::npos);

  CHECK(cmd_verify(true, mutated) == 1);
  CHECK(mutated.str().find("FAIL block_consistency") != std::string::npos);
}

TEST_CASE("numbers render with twelve significant digits") {
  CHECK(format_number(0.993163912488123) == "0.993163912488");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-0.25) == "-0.25");
  CHECK(format_number(1e-30) == "1e-30");
}
