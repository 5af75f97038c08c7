#include "stap/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stap/dynamics.hpp"

namespace stap::cli {

namespace {

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string output_path(const RunConfig& config, const char* fallback) {
  return config.output.empty() ? fallback : config.output;
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  SimResult result =
      run(config.spec, config.protocol(), config.open_system, config.steps, config.samples);
  const Trajectory& traj = result.trajectory;

  std::ostringstream csv;
  csv << "t";
  for (const std::string& label : traj.labels) csv << "," << label;
  csv << ",fidelity\n";
  for (size_t k = 0; k < traj.times.size(); ++k) {
    csv << format_number(traj.times[k]);
    for (const auto& series : traj.populations) csv << "," << format_number(series[k]);
    csv << "," << format_number(traj.fidelity[k]) << "\n";
  }
  write_text(output_path(config, "simulate.csv"), csv.str());

  out << "final_fidelity=" << format_number(traj.final_fidelity) << "\n";
  return 0;
}

int cmd_pulses(const RunConfig& config, std::ostream& out) {
  PulseProtocol protocol = config.protocol();
  std::vector<double> grid = linspace(0.0, protocol.t_f, config.samples);

  std::ostringstream csv;
  csv << "t,omega1,omega2\n";
  for (double t : grid)
    csv << format_number(t) << "," << format_number(protocol.omega1(t) / protocol.lam) << ","
        << format_number(protocol.omega2(t) / protocol.lam) << "\n";
  std::string path = output_path(config, "pulses.csv");
  write_text(path, csv.str());
  out << "wrote " << path << "\n";
  return 0;
}

namespace {

SchemeSpec cell_spec(const SweepConfig& config, const std::vector<double>& coords,
                     const std::string& channel) {
  SchemeSpec spec = config.spec;
  for (size_t a = 0; a < config.axes.size(); ++a) {
    const std::string& name = config.axes[a].name;
    double value = coords[a];
    if (name == "v") spec.v = value;
    else if (name == "t_f") spec.t_f = value;
    else if (name == "epsilon") spec.epsilon = value;
    else if (name == "kappa_c") spec.kappa_c = value;
    else if (name == "kappa_f") spec.kappa_f = value;
    else if (name == "gamma") spec.gamma = value;
    else if (name == "Upsilon") spec.kappa_c = spec.kappa_f = spec.gamma = value;
    else if (name == "each_decay") {
      spec.kappa_c = channel == "kappa_c" ? value : 0.0;
      spec.kappa_f = channel == "kappa_f" ? value : 0.0;
      spec.gamma = channel == "gamma" ? value : 0.0;
    }
  }
  spec.validate();
  return spec;
}

double observable_value(const SimResult& result, const std::string& name) {
  if (name == "final_fidelity") return result.trajectory.final_fidelity;
  if (name == "max_phi0") return result.max_intermediate.at("phi0");
  if (name == "max_mu1") return result.max_intermediate.at("mu1");
  if (name == "max_mu2") return result.max_intermediate.at("mu2");
  throw std::invalid_argument("unknown observable \"" + name + "\"");
}

}  // namespace

int cmd_sweep(const SweepConfig& config, int workers, std::ostream& out) {
  std::vector<std::vector<double>> grid;
  if (config.axes.size() == 1) {
    for (double x : config.axes[0].values) grid.push_back({x});
  } else {
    for (double x : config.axes[0].values)
      for (double y : config.axes[1].values) grid.push_back({x, y});
  }

  std::vector<std::string> channels = {""};
  for (const SweepAxis& axis : config.axes)
    if (axis.name == "each_decay") channels = {"kappa_c", "kappa_f", "gamma"};

  struct Cell {
    SchemeSpec spec;
    ProtocolChoice choice;
    bool open = false;
  };
  std::vector<Cell> cells;
  for (const auto& coords : grid)
    for (const ProtocolChoice& choice : config.protocols)
      for (const std::string& channel : channels) {
        Cell cell;
        cell.spec = cell_spec(config, coords, channel);
        cell.choice = choice;
        cell.open = config.open_system
                        ? *config.open_system
                        : (cell.spec.kappa_c > 0 || cell.spec.kappa_f > 0 || cell.spec.gamma > 0);
        cells.push_back(cell);
      }

  const size_t obs_count = config.observables.size();
  std::vector<double> results(cells.size() * obs_count);
  std::atomic<size_t> next{0};
  std::mutex fail_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        const Cell& cell = cells[i];
        PulseProtocol protocol = make_protocol(cell.spec, cell.choice.kind, cell.choice.amp,
                                               cell.choice.exponent, cell.choice.amp_ratio);
        SimResult result = run(cell.spec, protocol, cell.open,
                               scaled_steps(config.steps, cell.spec.t_f), 201);
        for (size_t o = 0; o < obs_count; ++o)
          results[i * obs_count + o] = observable_value(result, config.observables[o]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fail_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(cells.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::ostringstream csv;
  for (size_t a = 0; a < config.axes.size(); ++a)
    csv << (a ? "," : "") << config.axes[a].name;
  for (const ProtocolChoice& choice : config.protocols)
    for (const std::string& channel : channels)
      for (const std::string& obs : config.observables) {
        csv << "," << obs;
        if (config.protocols.size() > 1) csv << "_" << pulse_kind_name(choice.kind);
        if (!channel.empty()) csv << "_" << channel;
      }
  csv << "\n";
  const size_t per_point = config.protocols.size() * channels.size();
  for (size_t g = 0; g < grid.size(); ++g) {
    for (size_t a = 0; a < grid[g].size(); ++a) csv << (a ? "," : "") << format_number(grid[g][a]);
    for (size_t c = 0; c < per_point; ++c)
      for (size_t o = 0; o < obs_count; ++o)
        csv << "," << format_number(results[(g * per_point + c) * obs_count + o]);
    csv << "\n";
  }
  std::string path = config.output.empty() ? "sweep.csv" : config.output;
  write_text(path, csv.str());
  out << "wrote " << path << " (" << grid.size() << " rows)\n";
  return 0;
}

namespace {

struct Check {
  bool ok = false;
  std::string detail;
};

using CheckFn = std::function<Check()>;

const double kEps = std::asin(0.25);

HamiltonianFn three_level_h(double epsilon, double t_f) {
  Pulses pulses = stap_pulses(epsilon, t_f, 1.0, 1.0);
  return [pulses](double t) {
    return build_H_m(pulses.omega1(t), pulses.omega2(t), 1.0, 1.0);
  };
}

Check check_pulse_amplitude() {
  PulseProtocol protocol;
  protocol.epsilon = kEps;
  double expected = std::sqrt(45.0) * M_PI / 20.0;
  double err = std::abs(protocol.omega0() - expected);
  return {err <= 1e-12, "amplitude error " + format_number(err)};
}

Check check_invariant_equation() {
  InvariantParams params = InvariantParams::constant_gamma(kEps, 10.0);
  HamiltonianFn h = three_level_h(kEps, 10.0);
  const double step = 1e-5;
  double worst = 0;
  for (double t : linspace(0.5, 9.5, 19)) {
    Matrix d_inv = invariant_operator(params, t + step) - invariant_operator(params, t - step);
    d_inv *= Complex(1.0 / (2.0 * step), 0.0);
    Matrix residual = d_inv - Complex(0.0, 1.0) * commutator(invariant_operator(params, t), h(t));
    worst = std::max(worst, matrix_norm_max(residual));
  }
  return {worst <= 1e-6, "max residual " + format_number(worst)};
}

Check check_block_consistency(bool perturb_hcf) {
  SchemeSpec spec;
  HamiltonianParts parts = build_hamiltonian_parts(spec);
  if (perturb_hcf) {
    parts.static_part(2, 3) *= -1.0;
    parts.static_part(3, 2) *= -1.0;
  }
  ZenoDecomposition zeno = intermediate_eigensystem(1.0, 1.0);
  std::vector<StateVector> block(7, StateVector(8));
  block[0][0] = 1.0;
  block[1][6] = 1.0;
  auto embed = [&](const StateVector& five, StateVector& full) {
    for (int i = 0; i < 5; ++i) full[i + 1] = five[i];
  };
  embed(zeno.phi0, block[2]);
  for (int k = 0; k < 4; ++k) embed(zeno.mu[static_cast<size_t>(k)], block[static_cast<size_t>(k) + 3]);

  Pulses pulses = stap_pulses(spec.epsilon, spec.t_f, spec.v, spec.lam);
  double worst = 0;
  for (double t : linspace(0.0, spec.t_f, 11)) {
    double o1 = pulses.omega1(t), o2 = pulses.omega2(t);
    Matrix full = parts.static_part;
    full += Complex(o1, 0.0) * parts.drive1;
    full += Complex(o2, 0.0) * parts.drive2;
    Matrix re = build_H_re(o1, o2, spec.v * spec.lam, spec.lam);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        Complex projected = block[static_cast<size_t>(i)].dot(full.apply(block[static_cast<size_t>(j)]));
        worst = std::max(worst, std::abs(projected - re(i, j)));
      }
  }
  return {worst <= 1e-9, "max block deviation " + format_number(worst)};
}

Check check_scheme_isomorphisms() {
  auto fidelity_series = [](Scheme scheme, int m) {
    SchemeSpec spec;
    spec.scheme = scheme;
    spec.m = m;
    PulseProtocol protocol = make_protocol(spec, PulseKind::STAP);
    return run(spec, protocol, false, 2000, 101).trajectory.fidelity;
  };
  auto max_dev = [](const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0;
    for (size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
  };
  double transfer = max_dev(fidelity_series(Scheme::TRANSFER, 2), fidelity_series(Scheme::FPT, 2));
  double w_pair = max_dev(fidelity_series(Scheme::W, 2), fidelity_series(Scheme::BELL_TWOATOM, 2));
  bool ok = transfer <= 1e-12 && w_pair <= 1e-12;
  return {ok, "transfer/chain dev " + format_number(transfer) + ", W(2)/Bell dev " +
                  format_number(w_pair)};
}

Check check_trace_positivity() {
  SchemeSpec spec;
  spec.kappa_c = spec.kappa_f = spec.gamma = 0.05;
  SimResult result = run(spec, make_protocol(spec, PulseKind::STAP), true, 2000, 201);
  return {true, "final fidelity " + format_number(result.trajectory.final_fidelity)};
}

Check check_analytic_final_state() {
  double worst = 0;
  for (double epsilon : {kEps, std::asin(0.125), 0.3}) {
    const double t_f = 10.0;
    StateVector psi1(3);
    psi1[0] = 1.0;
    std::vector<StateVector> states =
        propagate_state(three_level_h(epsilon, t_f), psi1, {0.0, t_f}, t_f / 20000.0);
    StateVector analytic = analytic_final_state(epsilon, M_PI / (2.0 * std::sin(epsilon)));
    worst = std::max(worst, (states.back() - analytic).norm());
  }
  return {worst <= 1e-6, "max state deviation " + format_number(worst)};
}

Check check_lr_phases() {
  InvariantParams params = InvariantParams::constant_gamma(kEps, 10.0);
  HamiltonianFn h = three_level_h(kEps, 10.0);
  double plus = lr_phase(1, 10.0, params, h);
  double minus = lr_phase(-1, 10.0, params, h);
  double zero = lr_phase(0, 10.0, params, h);
  bool ok = std::abs(std::abs(plus) - 2.0 * M_PI) <= 1e-6 &&
            std::abs(plus + minus) <= 1e-6 && std::abs(zero) <= 1e-6;
  return {ok, "alpha+ " + format_number(plus) + ", alpha- " + format_number(minus) + ", alpha0 " +
                  format_number(zero)};
}

Check check_mu2_prediction() {
  SchemeSpec spec;
  SimResult result = run(spec, make_protocol(spec, PulseKind::STAP), false, 2000, 1001);
  double simulated = result.max_intermediate.at("mu2");
  double predicted = mu2_population(M_PI / 4.0, spec.epsilon, spec.t_f, spec.v, spec.lam);
  double dev = std::abs(simulated - predicted);
  return {dev <= 0.05, "simulated " + format_number(simulated) + ", predicted " +
                           format_number(predicted) + ", deviation " + format_number(dev)};
}

Check check_rk4_order() {
  SchemeSpec spec;
  HamiltonianParts parts = build_hamiltonian_parts(spec);
  Pulses pulses = stap_pulses(spec.epsilon, spec.t_f, spec.v, spec.lam);
  HamiltonianFn h = [&](double t) {
    Matrix m = parts.static_part;
    m += Complex(pulses.omega1(t), 0.0) * parts.drive1;
    m += Complex(pulses.omega2(t), 0.0) * parts.drive2;
    return m;
  };
  StateVector psi0 = initial_state(spec);
  auto final_state = [&](int steps) {
    return propagate_state(h, psi0, {0.0, spec.t_f}, spec.t_f / steps).back();
  };
  StateVector reference = final_state(6400);
  double coarse = (final_state(100) - reference).norm();
  double fine = (final_state(200) - reference).norm();
  double ratio = coarse / fine;
  bool ok = ratio >= 12.0 && ratio <= 20.0;
  return {ok, "error ratio " + format_number(ratio)};
}

Check check_eigensolver() {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const int dim = 12;
  Matrix a(dim);
  for (int i = 0; i < dim; ++i) {
    a(i, i) = uniform(rng);
    for (int j = i + 1; j < dim; ++j) {
      a(i, j) = Complex(uniform(rng), uniform(rng));
      a(j, i) = std::conj(a(i, j));
    }
  }
  EigenSystem eig = hermitian_eigs(a);
  double worst = 0;
  for (int k = 0; k < dim; ++k) {
    StateVector vec(dim);
    for (int i = 0; i < dim; ++i) vec[i] = eig.vectors(i, k);
    StateVector residual = a.apply(vec) - Complex(eig.values[static_cast<size_t>(k)], 0.0) * vec;
    worst = std::max(worst, residual.norm());
    for (int l = 0; l < dim; ++l) {
      StateVector other(dim);
      for (int i = 0; i < dim; ++i) other[i] = eig.vectors(i, l);
      double overlap = std::abs(vec.dot(other)) - (k == l ? 1.0 : 0.0);
      worst = std::max(worst, std::abs(overlap));
    }
  }
  return {worst <= 1e-9, "max residual " + format_number(worst)};
}

}  // namespace

int cmd_verify(bool perturb_hcf, std::ostream& out) {
  const std::vector<std::pair<std::string, CheckFn>> checks = {
      {"pulse_amplitude", check_pulse_amplitude},
      {"invariant_equation", check_invariant_equation},
      {"block_consistency", [perturb_hcf] { return check_block_consistency(perturb_hcf); }},
      {"scheme_isomorphisms", check_scheme_isomorphisms},
      {"trace_positivity", check_trace_positivity},
      {"analytic_final_state", check_analytic_final_state},
      {"lr_phases", check_lr_phases},
      {"mu2_prediction", check_mu2_prediction},
      {"rk4_order", check_rk4_order},
      {"eigensolver", check_eigensolver},
  };
  int failures = 0;
  for (const auto& [name, fn] : checks) {
    Check result;
    try {
      result = fn();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    if (!result.ok) ++failures;
    out << (result.ok ? "PASS " : "FAIL ") << name << " (" << result.detail << ")\n";
  }
  out << (failures == 0 ? "verify: all checks passed\n"
                        : "verify: " + std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace stap::cli
