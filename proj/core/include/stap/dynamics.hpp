#ifndef STAP_DYNAMICS_HPP
#define STAP_DYNAMICS_HPP

#include <map>
#include <string>
#include <vector>

#include "stap/effective.hpp"
#include "stap/invariant.hpp"
#include "stap/model.hpp"
#include "stap/numerics.hpp"

namespace stap {

struct Trajectory {
  std::vector<double> times;
  std::vector<std::string> labels;                 // basis labels then derived labels
  std::vector<std::vector<double>> populations;    // one series per label
  std::vector<double> fidelity;
  double final_fidelity = 0;
};

struct SimResult {
  SchemeSpec spec;
  PulseProtocol protocol;
  bool open_system = false;
  Trajectory trajectory;
  std::map<std::string, double> max_intermediate;  // derived label -> series max
};

// Protocol taking epsilon/t_f/v/lam from the scheme spec.
PulseProtocol make_protocol(const SchemeSpec& spec, PulseKind kind, double amp = 1.0,
                            double exponent = 1.2, double amp_ratio = 0.5);

// RK4 substep budget for a given total time: `steps` applies to t_f = 10 and
// grows proportionally beyond it, so the substep size never exceeds the
// t_f = 10 baseline.
int scaled_steps(int steps, double t_f);

SimResult run(const SchemeSpec& spec, const PulseProtocol& protocol, bool open_system,
              int steps = 2000, int samples = 1001);

double fidelity(const StateVector& state, const StateVector& target);
double fidelity(const Matrix& rho, const StateVector& target);

struct ComparisonRow {
  int protocol_index = 0;
  double t_f = 0;
  double final_fidelity = 0;
};

// One run per (protocol, t_f) cell; rows ordered protocol-major, then grid
// order, independent of worker count.
std::vector<ComparisonRow> compare_protocols(const SchemeSpec& spec,
                                             const std::vector<PulseProtocol>& protocols,
                                             const std::vector<double>& t_f_grid, int steps = 2000,
                                             int workers = 1);

}  // namespace stap

#endif
