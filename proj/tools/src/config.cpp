#include "stap/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace stap::cli {

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("unknown key \"" + it.key() + "\" in " + where);
}

void require_units(const json& doc) {
  if (!doc.contains("units")) throw std::invalid_argument("missing key \"units\" (expected \"lambda\")");
  if (doc.at("units") != "lambda")
    throw std::invalid_argument("key \"units\" must be \"lambda\"");
}

double get_number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) throw std::invalid_argument("key \"" + key + "\" must be a number");
  return obj.at(key).get<double>();
}

void check_rate(const std::string& key, double value) {
  if (value < 0) throw std::invalid_argument("key \"" + key + "\" must be nonnegative");
}

SchemeSpec parse_spec(const json& doc) {
  SchemeSpec spec;
  if (doc.contains("scheme")) spec.scheme = scheme_from_name(doc.at("scheme").get<std::string>());
  spec.m = static_cast<int>(get_number(doc, "m", spec.m));
  spec.v = get_number(doc, "v", spec.v);
  spec.lam = get_number(doc, "lam", spec.lam);
  spec.epsilon = get_number(doc, "epsilon", spec.epsilon);
  spec.t_f = get_number(doc, "t_f", spec.t_f);
  spec.kappa_c = get_number(doc, "kappa_c", 0.0);
  spec.kappa_f = get_number(doc, "kappa_f", 0.0);
  spec.gamma = get_number(doc, "gamma", 0.0);
  check_rate("kappa_c", spec.kappa_c);
  check_rate("kappa_f", spec.kappa_f);
  check_rate("gamma", spec.gamma);
  spec.validate();
  return spec;
}

const std::set<std::string> kSpecKeys = {"scheme", "m",       "v",       "lam",  "epsilon",
                                         "t_f",    "kappa_c", "kappa_f", "gamma"};
const std::set<std::string> kProtocolKeys = {"kind", "amp", "exponent", "amp_ratio"};

void parse_protocol_block(const json& block, PulseKind& kind, double& amp, double& exponent,
                          double& amp_ratio) {
  reject_unknown_keys(block, kProtocolKeys, "\"protocol\"");
  if (block.contains("kind")) kind = pulse_kind_from_name(block.at("kind").get<std::string>());
  amp = get_number(block, "amp", amp);
  exponent = get_number(block, "exponent", exponent);
  amp_ratio = get_number(block, "amp_ratio", amp_ratio);
}

}  // namespace

std::string pulse_kind_name(PulseKind kind) {
  switch (kind) {
    case PulseKind::STAP: return "STAP";
    case PulseKind::ADIABATIC_TRIG: return "ADIABATIC_TRIG";
    case PulseKind::ADIABATIC_EXP: return "ADIABATIC_EXP";
  }
  return "STAP";
}

PulseKind pulse_kind_from_name(const std::string& name) {
  if (name == "STAP") return PulseKind::STAP;
  if (name == "ADIABATIC_TRIG") return PulseKind::ADIABATIC_TRIG;
  if (name == "ADIABATIC_EXP") return PulseKind::ADIABATIC_EXP;
  throw std::invalid_argument("unknown protocol kind: " + name);
}

PulseProtocol RunConfig::protocol() const {
  return make_protocol(spec, kind, amp, exponent, amp_ratio);
}

RunConfig parse_run_config(const json& doc) {
  require_units(doc);
  std::set<std::string> allowed = kSpecKeys;
  allowed.insert({"units", "protocol", "open_system", "steps", "samples", "output"});
  reject_unknown_keys(doc, allowed, "run config");

  RunConfig config;
  config.spec = parse_spec(doc);
  if (doc.contains("protocol"))
    parse_protocol_block(doc.at("protocol"), config.kind, config.amp, config.exponent,
                         config.amp_ratio);
  if (doc.contains("open_system")) config.open_system = doc.at("open_system").get<bool>();
  config.steps = static_cast<int>(get_number(doc, "steps", config.steps));
  config.samples = static_cast<int>(get_number(doc, "samples", config.samples));
  if (config.steps <= 0) throw std::invalid_argument("key \"steps\" must be positive");
  if (config.samples < 2) throw std::invalid_argument("key \"samples\" must be at least 2");
  if (doc.contains("output")) config.output = doc.at("output").get<std::string>();
  config.protocol();  // validates the pulse parameters, e.g. epsilon=0
  return config;
}

SweepConfig parse_sweep_config(const json& doc) {
  require_units(doc);
  std::set<std::string> allowed = {"units",       "scheme", "m",     "fixed",  "protocol",
                                   "protocols",   "axes",   "steps", "output", "observables",
                                   "open_system"};
  reject_unknown_keys(doc, allowed, "sweep config");

  SweepConfig config;
  json spec_doc;
  if (doc.contains("scheme")) spec_doc["scheme"] = doc.at("scheme");
  if (doc.contains("m")) spec_doc["m"] = doc.at("m");
  if (doc.contains("fixed")) {
    reject_unknown_keys(doc.at("fixed"), kSpecKeys, "\"fixed\"");
    for (auto it = doc.at("fixed").begin(); it != doc.at("fixed").end(); ++it)
      spec_doc[it.key()] = it.value();
  }
  config.spec = parse_spec(spec_doc);

  if (doc.contains("protocol") && doc.contains("protocols"))
    throw std::invalid_argument("keys \"protocol\" and \"protocols\" are mutually exclusive");
  auto add_protocol = [&](const json& block) {
    ProtocolChoice choice;
    parse_protocol_block(block, choice.kind, choice.amp, choice.exponent, choice.amp_ratio);
    config.protocols.push_back(choice);
  };
  if (doc.contains("protocols"))
    for (const json& block : doc.at("protocols")) add_protocol(block);
  else if (doc.contains("protocol"))
    add_protocol(doc.at("protocol"));
  else
    config.protocols.push_back({});

  if (!doc.contains("axes")) throw std::invalid_argument("missing key \"axes\"");
  const std::set<std::string> axis_names = {"v",       "t_f",   "epsilon",   "kappa_c",
                                            "kappa_f", "gamma", "Upsilon",   "each_decay"};
  for (const json& axis_doc : doc.at("axes")) {
    reject_unknown_keys(axis_doc, {"name", "start", "stop", "count", "values"}, "axis");
    SweepAxis axis;
    axis.name = axis_doc.at("name").get<std::string>();
    if (!axis_names.count(axis.name))
      throw std::invalid_argument("unknown axis name \"" + axis.name + "\"");
    if (axis_doc.contains("values")) {
      axis.values = axis_doc.at("values").get<std::vector<double>>();
    } else {
      double start = axis_doc.at("start").get<double>();
      double stop = axis_doc.at("stop").get<double>();
      int count = axis_doc.at("count").get<int>();
      if (count < 1) throw std::invalid_argument("axis \"count\" must be positive");
      if (count == 1)
        axis.values = {start};
      else
        axis.values = linspace(start, stop, count);
    }
    if (axis.values.empty()) throw std::invalid_argument("axis \"" + axis.name + "\" is empty");
    if (axis.name != "each_decay")
      for (size_t i = 1; i < axis.values.size(); ++i)
        if (axis.values[i] <= axis.values[i - 1])
          throw std::invalid_argument("axis \"" + axis.name + "\" must be strictly increasing");
    config.axes.push_back(axis);
  }
  if (config.axes.empty() || config.axes.size() > 2)
    throw std::invalid_argument("sweep requires 1 or 2 axes");
  bool has_upsilon = false, has_decay_axis = false;
  for (const SweepAxis& axis : config.axes) {
    if (axis.name == "Upsilon") has_upsilon = true;
    if (axis.name == "kappa_c" || axis.name == "kappa_f" || axis.name == "gamma")
      has_decay_axis = true;
  }
  if (has_upsilon && has_decay_axis)
    throw std::invalid_argument("axis \"Upsilon\" excludes individual decay axes");

  if (doc.contains("observables"))
    config.observables = doc.at("observables").get<std::vector<std::string>>();
  else
    config.observables = {"final_fidelity"};
  const std::set<std::string> known = {"final_fidelity", "max_phi0", "max_mu1", "max_mu2"};
  for (const std::string& obs : config.observables)
    if (!known.count(obs)) throw std::invalid_argument("unknown observable \"" + obs + "\"");

  if (doc.contains("open_system")) config.open_system = doc.at("open_system").get<bool>();
  config.steps = static_cast<int>(get_number(doc, "steps", config.steps));
  if (config.steps <= 0) throw std::invalid_argument("key \"steps\" must be positive");
  if (doc.contains("output")) config.output = doc.at("output").get<std::string>();
  return config;
}

json to_json(const RunConfig& config) {
  json doc;
  doc["units"] = "lambda";
  doc["scheme"] = scheme_name(config.spec.scheme);
  doc["m"] = config.spec.m;
  doc["v"] = config.spec.v;
  doc["lam"] = config.spec.lam;
  doc["epsilon"] = config.spec.epsilon;
  doc["t_f"] = config.spec.t_f;
  doc["kappa_c"] = config.spec.kappa_c;
  doc["kappa_f"] = config.spec.kappa_f;
  doc["gamma"] = config.spec.gamma;
  doc["protocol"] = {{"kind", pulse_kind_name(config.kind)},
                     {"amp", config.amp},
                     {"exponent", config.exponent},
                     {"amp_ratio", config.amp_ratio}};
  doc["open_system"] = config.open_system;
  doc["steps"] = config.steps;
  doc["samples"] = config.samples;
  if (!config.output.empty()) doc["output"] = config.output;
  return doc;
}

json to_json(const SweepConfig& config) {
  json doc;
  doc["units"] = "lambda";
  doc["scheme"] = scheme_name(config.spec.scheme);
  doc["m"] = config.spec.m;
  doc["fixed"] = {{"v", config.spec.v},         {"lam", config.spec.lam},
                  {"epsilon", config.spec.epsilon}, {"t_f", config.spec.t_f},
                  {"kappa_c", config.spec.kappa_c}, {"kappa_f", config.spec.kappa_f},
                  {"gamma", config.spec.gamma}};
  doc["protocols"] = json::array();
  for (const ProtocolChoice& p : config.protocols) {
    doc["protocols"].push_back({{"kind", pulse_kind_name(p.kind)},
                                {"amp", p.amp},
                                {"exponent", p.exponent},
                                {"amp_ratio", p.amp_ratio}});
  }
  doc["axes"] = json::array();
  for (const SweepAxis& axis : config.axes)
    doc["axes"].push_back({{"name", axis.name}, {"values", axis.values}});
  doc["observables"] = config.observables;
  if (config.open_system) doc["open_system"] = *config.open_system;
  doc["steps"] = config.steps;
  if (!config.output.empty()) doc["output"] = config.output;
  return doc;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
  return doc;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace stap::cli
