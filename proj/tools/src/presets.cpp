#include "stap/cli/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace stap::cli {

namespace {

// Reference working point used throughout: epsilon = arcsin(1/4), t_f = 10/lambda, v = lambda.
const double kEps = std::asin(0.25);

json base_run(const char* scheme) {
  return {{"units", "lambda"}, {"scheme", scheme}, {"epsilon", kEps},
          {"t_f", 10.0},       {"v", 1.0}};
}

json base_sweep(const char* scheme) {
  return {{"units", "lambda"},
          {"scheme", scheme},
          {"fixed", {{"epsilon", kEps}, {"v", 1.0}, {"t_f", 10.0}}}};
}

json tf_axis(double start, double stop, int count) {
  return json::array({{{"name", "t_f"}, {"start", start}, {"stop", stop}, {"count", count}}});
}

json stap_vs(const char* other, double exponent = 1.2, double amp_ratio = 0.5) {
  return json::array({{{"kind", "STAP"}},
                      {{"kind", other}, {"exponent", exponent}, {"amp_ratio", amp_ratio}}});
}

std::vector<Preset> build() {
  std::vector<Preset> list;

  {
    json cfg = {{"units", "lambda"},
                {"scheme", "FPT"},
                {"fixed", {{"epsilon", kEps}}},
                {"axes",
                 json::array({{{"name", "v"}, {"start", 0.1}, {"stop", 2.0}, {"count", 20}},
                              {{"name", "t_f"}, {"start", 2.0}, {"stop", 30.0}, {"count", 29}}})}};
    list.push_back({"fig2", PresetKind::SWEEP, cfg,
                    "closed FPT fidelity grid; adopted ranges v in [0.1,2.0] (20 pts) and "
                    "t_f in [2,30] (29 pts) to cover the ideal-transfer ridge onset near t_f=8"});
  }

  list.push_back({"fig3a", PresetKind::PULSES, base_run("FPT"),
                  "pulse shapes Omega_1/lambda, Omega_2/lambda at the reference working point"});
  list.push_back({"fig3b", PresetKind::SIMULATE, base_run("FPT"),
                  "closed FPT trajectory; plot the initial/target populations and fidelity"});

  {
    json cfg = base_sweep("FPT");
    cfg["axes"] = tf_axis(2.0, 60.0, 30);
    cfg["protocols"] = stap_vs("ADIABATIC_TRIG");
    list.push_back({"fig3c", PresetKind::SWEEP, cfg,
                    "operation-time comparison, STAP vs trig adiabatic; adopted range "
                    "t_f in [2,60] (30 pts)"});
  }

  list.push_back({"fig3d", PresetKind::SIMULATE, base_run("FPT"),
                  "same run as fig3b; plot the intermediate-mode columns phi0, mu1..mu4"});

  list.push_back({"fig4a", PresetKind::SIMULATE, base_run("BELL_AUX"),
                  "closed Bell-state generation with the auxiliary-ground atom"});
  {
    json cfg = base_sweep("BELL_AUX");
    cfg["axes"] = tf_axis(2.0, 60.0, 30);
    cfg["protocols"] = stap_vs("ADIABATIC_TRIG");
    list.push_back({"fig4b", PresetKind::SWEEP, cfg,
                    "Bell (auxiliary-atom) fidelity vs t_f, STAP vs trig adiabatic; adopted "
                    "range t_f in [2,60] (30 pts)"});
  }
  list.push_back({"fig4c", PresetKind::SIMULATE, base_run("BELL_TWOATOM"),
                  "closed Bell-state generation with two atoms in the second cavity"});
  {
    json cfg = base_sweep("BELL_TWOATOM");
    cfg["axes"] = tf_axis(2.0, 60.0, 30);
    cfg["protocols"] = stap_vs("ADIABATIC_EXP");
    list.push_back({"fig4d", PresetKind::SWEEP, cfg,
                    "Bell (two-atom) fidelity vs t_f, STAP vs exponent-1.2 adiabatic pulses "
                    "(amp_ratio 0.5); adopted range t_f in [2,60] (30 pts)"});
  }

  {
    json cfg = base_run("GHZ");
    cfg["m"] = 3;
    list.push_back({"fig5a", PresetKind::SIMULATE, cfg,
                    "closed GHZ generation, M=3 atoms in the second cavity"});
  }
  {
    json cfg = base_sweep("GHZ");
    cfg["m"] = 3;
    cfg["axes"] = tf_axis(2.0, 60.0, 30);
    cfg["protocols"] = stap_vs("ADIABATIC_TRIG");
    list.push_back({"fig5b", PresetKind::SWEEP, cfg,
                    "GHZ (M=3) fidelity vs t_f, STAP vs trig adiabatic; adopted range "
                    "t_f in [2,60] (30 pts)"});
  }
  {
    json cfg = base_run("W");
    cfg["m"] = 3;
    list.push_back({"fig5c", PresetKind::SIMULATE, cfg,
                    "closed W-state generation, M=3 atoms in the second cavity"});
  }
  {
    json cfg = base_sweep("W");
    cfg["m"] = 3;
    cfg["axes"] = tf_axis(2.0, 60.0, 30);
    cfg["protocols"] = stap_vs("ADIABATIC_TRIG");
    list.push_back({"fig5d", PresetKind::SWEEP, cfg,
                    "W (M=3) fidelity vs t_f, STAP vs trig adiabatic; adopted range "
                    "t_f in [2,60] (30 pts)"});
  }
  list.push_back({"fig5e", PresetKind::SIMULATE, base_run("TRANSFER"),
                  "closed entangled-state transfer between the two atom pairs"});
  {
    json cfg = base_sweep("TRANSFER");
    cfg["axes"] = tf_axis(2.0, 60.0, 30);
    cfg["protocols"] = stap_vs("ADIABATIC_TRIG");
    list.push_back({"fig5f", PresetKind::SWEEP, cfg,
                    "entangled-state-transfer fidelity vs t_f, STAP vs trig adiabatic; "
                    "adopted range t_f in [2,60] (30 pts)"});
  }

  {
    json cfg = base_sweep("FPT");
    cfg["fixed"]["t_f"] = 100.0;
    cfg["protocol"] = {{"kind", "ADIABATIC_TRIG"}};
    cfg["axes"] =
        json::array({{{"name", "each_decay"}, {"start", 0.0}, {"stop", 0.1}, {"count", 11}}});
    cfg["open_system"] = true;
    list.push_back({"fig6a", PresetKind::SWEEP, cfg,
                    "adiabatic baseline (trig pulses, t_f=100): fidelity vs each decay rate "
                    "alone over [0,0.1] (11 pts), the other two rates zero"});
  }
  {
    json cfg = base_sweep("FPT");
    cfg["axes"] =
        json::array({{{"name", "each_decay"}, {"start", 0.0}, {"stop", 0.1}, {"count", 11}}});
    cfg["open_system"] = true;
    list.push_back({"fig6b", PresetKind::SWEEP, cfg,
                    "STAP (t_f=10): fidelity vs each decay rate alone over [0,0.1] (11 pts), "
                    "the other two rates zero"});
  }

  {
    json cfg = base_sweep("FPT");
    for (const char* key : {"kappa_c", "kappa_f", "gamma"}) cfg["fixed"][key] = 0.05;
    cfg["axes"] = tf_axis(9.0, 20.0, 23);
    list.push_back({"fig7a", PresetKind::SWEEP, cfg,
                    "fidelity vs t_f with kappa_c=kappa_f=gamma=0.05; adopted range "
                    "t_f in [9,20] (23 pts)"});
    cfg["observables"] = {"max_phi0", "max_mu2"};
    list.push_back({"fig7b", PresetKind::SWEEP, cfg,
                    "maximum phi0 and mu2 populations vs t_f, same grid and decay rates "
                    "as fig7a"});
  }

  {
    json cfg = base_sweep("BELL_AUX");
    cfg["axes"] =
        json::array({{{"name", "Upsilon"}, {"start", 0.0}, {"stop", 0.1}, {"count", 11}}});
    list.push_back({"fig8a", PresetKind::SWEEP, cfg,
                    "Bell (auxiliary-atom) fidelity vs the common rate "
                    "Upsilon=kappa_c=kappa_f=gamma over [0,0.1] (11 pts)"});
    cfg["scheme"] = "BELL_TWOATOM";
    list.push_back({"fig8b", PresetKind::SWEEP, cfg,
                    "Bell (two-atom) fidelity vs the common rate "
                    "Upsilon=kappa_c=kappa_f=gamma over [0,0.1] (11 pts)"});
  }

  return list;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = build();
  return table;
}

const Preset& find_preset(const std::string& name) {
  for (const Preset& preset : presets())
    if (preset.name == name) return preset;
  std::string known;
  for (const Preset& preset : presets()) known += (known.empty() ? "" : ", ") + preset.name;
  throw std::invalid_argument("unknown preset \"" + name + "\" (known: " + known + ")");
}

}  // namespace stap::cli
