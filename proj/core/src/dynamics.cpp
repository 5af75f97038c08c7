#include "stap/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace stap {

namespace {

StateVector embed(const StateVector& w, const std::array<StateVector, 5>& modes) {
  StateVector out(modes[0].dim());
  for (int i = 0; i < 5; ++i) out += w[i] * modes[static_cast<size_t>(i)];
  return out;
}

double projection(const StateVector& x, const StateVector& psi) {
  return std::norm(x.dot(psi));
}

double projection(const StateVector& x, const Matrix& rho) {
  return x.dot(rho.apply(x)).real();
}

void parallel_cells(int count, int workers, const std::function<void(int)>& work) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          work(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

int scaled_steps(int steps, double t_f) {
  return std::max(steps, static_cast<int>(std::ceil(steps * t_f / 10.0)));
}

PulseProtocol make_protocol(const SchemeSpec& spec, PulseKind kind, double amp, double exponent,
                            double amp_ratio) {
  PulseProtocol p;
  p.kind = kind;
  p.epsilon = spec.epsilon;
  p.t_f = spec.t_f;
  p.v = spec.v;
  p.lam = spec.lam;
  p.amp = amp;
  p.exponent = exponent;
  p.amp_ratio = amp_ratio;
  p.validate();
  return p;
}

double fidelity(const StateVector& state, const StateVector& target) {
  if (state.dim() != target.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(target.dot(state));
}

double fidelity(const Matrix& rho, const StateVector& target) {
  if (rho.dim() != target.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::abs(target.dot(rho.apply(target)));
}

SimResult run(const SchemeSpec& spec, const PulseProtocol& protocol, bool open_system, int steps,
              int samples) {
  spec.validate();
  protocol.validate();
  if (steps <= 0) throw std::invalid_argument("steps must be positive");
  if (samples < 2) throw std::invalid_argument("samples must be at least 2");

  Basis basis = build_basis(spec);
  HamiltonianParts parts = build_hamiltonian_parts(spec);
  StateVector psi0 = initial_state(spec);
  StateVector target = target_state(spec);
  PulseProtocol prot = protocol;
  HamiltonianFn h = [parts, prot](double t) {
    return parts.static_part + Complex(prot.omega1(t)) * parts.drive1 +
           Complex(prot.omega2(t)) * parts.drive2;
  };

  std::vector<double> grid = linspace(0.0, spec.t_f, samples);
  double step = spec.t_f / steps;

  SchemeReduction red = scheme_reduction(spec);
  ZenoDecomposition zeno = intermediate_eigensystem(spec.v * spec.lam, spec.lam);
  std::vector<std::pair<std::string, StateVector>> derived;
  derived.emplace_back("phi0", embed(zeno.phi0, red.modes));
  for (int k = 0; k < 4; ++k)
    derived.emplace_back("mu" + std::to_string(k + 1), embed(zeno.mu[static_cast<size_t>(k)], red.modes));
  StateVector mu2_full = derived[2].second;

  SimResult result;
  result.spec = spec;
  result.protocol = prot;
  result.open_system = open_system;
  Trajectory& traj = result.trajectory;
  traj.times = grid;
  traj.labels = basis.labels;
  for (const auto& [name, vec] : derived) traj.labels.push_back(name);
  traj.labels.push_back("dark");
  traj.populations.assign(traj.labels.size(), std::vector<double>(grid.size(), 0.0));
  traj.fidelity.resize(grid.size());

  auto dark_at = [&](double t) {
    StateVector d3 = dark_state(prot.omega1(t), prot.omega2(t), spec.lam);
    StateVector full = d3[0] * red.psi1 + d3[1] * red.psi7 + d3[2] * mu2_full;
    return full;
  };

  auto record = [&](size_t k, auto&& state, double total) {
    for (int i = 0; i < basis.dim(); ++i)
      traj.populations[static_cast<size_t>(i)][k] = projection(StateVector::basis(basis.dim(), i), state);
    for (size_t d = 0; d < derived.size(); ++d)
      traj.populations[basis.dim() + d][k] = projection(derived[d].second, state);
    traj.populations[traj.labels.size() - 1][k] = projection(dark_at(grid[k]), state);
    traj.fidelity[k] = fidelity(state, target);
    for (size_t i = 0; i < traj.labels.size(); ++i) {
      double p = traj.populations[i][k];
      if (!(p >= -1e-9 && p <= 1 + 1e-9))
        throw std::runtime_error("population audit failed for " + traj.labels[i] + " at t=" +
                                 std::to_string(grid[k]) + ": " + std::to_string(p));
    }
    if (std::abs(total - 1.0) > 1e-6)
      throw std::runtime_error("norm/trace audit failed at t=" + std::to_string(grid[k]) + ": " +
                               std::to_string(total));
  };

  if (open_system) {
    Matrix rho0 = outer(psi0, psi0);
    std::vector<Matrix> lindblads;
    for (const DecayOp& op : build_lindblads(spec).ops) lindblads.push_back(op.op);
    std::vector<Matrix> rhos = propagate_density(h, lindblads, rho0, grid, step);
    for (size_t k = 0; k < rhos.size(); ++k) record(k, rhos[k], rhos[k].trace().real());
  } else {
    std::vector<StateVector> psis = propagate_state(h, psi0, grid, step);
    for (size_t k = 0; k < psis.size(); ++k) record(k, psis[k], psis[k].norm() * psis[k].norm());
  }

  traj.final_fidelity = traj.fidelity.back();
  for (size_t d = 0; d < derived.size() + 1; ++d) {
    const std::vector<double>& series = traj.populations[basis.dim() + d];
    double mx = 0;
    for (double p : series) mx = std::max(mx, p);
    result.max_intermediate[traj.labels[basis.dim() + d]] = mx;
  }
  return result;
}

std::vector<ComparisonRow> compare_protocols(const SchemeSpec& spec,
                                             const std::vector<PulseProtocol>& protocols,
                                             const std::vector<double>& t_f_grid, int steps,
                                             int workers) {
  if (protocols.empty() || t_f_grid.empty())
    throw std::invalid_argument("compare_protocols: empty protocol list or grid");
  bool open = spec.kappa_c > 0 || spec.kappa_f > 0 || spec.gamma > 0;
  int cells = static_cast<int>(protocols.size() * t_f_grid.size());
  std::vector<ComparisonRow> rows(static_cast<size_t>(cells));
  parallel_cells(cells, workers, [&](int cell) {
    int pi = cell / static_cast<int>(t_f_grid.size());
    int ti = cell % static_cast<int>(t_f_grid.size());
    SchemeSpec s = spec;
    s.t_f = t_f_grid[static_cast<size_t>(ti)];
    PulseProtocol p = protocols[static_cast<size_t>(pi)];
    p.t_f = s.t_f;
    SimResult res = run(s, p, open, scaled_steps(steps, s.t_f), 201);
    rows[static_cast<size_t>(cell)] = {pi, s.t_f, res.trajectory.final_fidelity};
  });
  return rows;
}

}  // namespace stap
