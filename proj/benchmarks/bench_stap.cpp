#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "stap/dynamics.hpp"

namespace {

stap::SchemeSpec reference_spec(bool open_system) {
  stap::SchemeSpec spec;
  spec.scheme = stap::Scheme::FPT;
  if (open_system) spec.kappa_c = spec.kappa_f = spec.gamma = 0.05;
  return spec;
}

stap::HamiltonianFn chain_hamiltonian(const stap::SchemeSpec& spec,
                                      const stap::PulseProtocol& protocol) {
  stap::HamiltonianParts parts = stap::build_hamiltonian_parts(spec);
  return [parts, protocol](double t) {
    return parts.static_part + stap::Complex(protocol.omega1(t)) * parts.drive1 +
           stap::Complex(protocol.omega2(t)) * parts.drive2;
  };
}

void state_propagation(benchmark::State& state) {
  stap::SchemeSpec spec = reference_spec(false);
  stap::PulseProtocol protocol = stap::make_protocol(spec, stap::PulseKind::STAP);
  stap::HamiltonianFn h = chain_hamiltonian(spec, protocol);
  stap::StateVector psi0 = stap::initial_state(spec);
  std::vector<double> grid = stap::linspace(0.0, spec.t_f, 101);
  double step = spec.t_f / 2000.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(stap::propagate_state(h, psi0, grid, step));
}

void density_propagation(benchmark::State& state) {
  stap::SchemeSpec spec = reference_spec(true);
  stap::PulseProtocol protocol = stap::make_protocol(spec, stap::PulseKind::STAP);
  stap::HamiltonianFn h = chain_hamiltonian(spec, protocol);
  std::vector<stap::Matrix> lindblads;
  for (const stap::DecayOp& op : stap::build_lindblads(spec).ops) lindblads.push_back(op.op);
  stap::StateVector psi0 = stap::initial_state(spec);
  stap::Matrix rho0 = stap::outer(psi0, psi0);
  std::vector<double> grid = stap::linspace(0.0, spec.t_f, 101);
  double step = spec.t_f / 2000.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(stap::propagate_density(h, lindblads, rho0, grid, step));
}

void eigensolver(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  stap::Matrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      stap::Complex value(entry(rng), i == j ? 0.0 : entry(rng));
      m(i, j) = value;
      m(j, i) = std::conj(value);
    }
  for (auto _ : state) benchmark::DoNotOptimize(stap::hermitian_eigs(m));
}

void full_transfer_run(benchmark::State& state) {
  const bool open_system = state.range(0) != 0;
  stap::SchemeSpec spec = reference_spec(open_system);
  stap::PulseProtocol protocol = stap::make_protocol(spec, stap::PulseKind::STAP);
  for (auto _ : state)
    benchmark::DoNotOptimize(stap::run(spec, protocol, open_system, 2000, 201));
}

BENCHMARK(state_propagation);
BENCHMARK(density_propagation);
BENCHMARK(eigensolver)->Arg(5)->Arg(8)->Arg(12);
BENCHMARK(full_transfer_run)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
