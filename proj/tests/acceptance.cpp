// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each check recomputes its numbers from scratch through the public
// API; expected values come from the closed-form layer or from independently
// frozen reference points.
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stap/cli/commands.hpp"
#include "stap/dynamics.hpp"

using namespace stap;

namespace {

const double kEps = std::asin(0.25);

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

SchemeSpec make_spec(Scheme scheme, int m = 2) {
  SchemeSpec spec;
  spec.scheme = scheme;
  spec.m = m;
  return spec;
}

const SimResult& reference_closed_run() {
  static const SimResult result = [] {
    SchemeSpec spec = make_spec(Scheme::FPT);
    return run(spec, make_protocol(spec, PulseKind::STAP), false);
  }();
  return result;
}

double open_fidelity(Scheme scheme, int m, PulseKind kind, double t_f, double kappa_c,
                     double kappa_f, double gamma) {
  SchemeSpec spec = make_spec(scheme, m);
  spec.t_f = t_f;
  spec.kappa_c = kappa_c;
  spec.kappa_f = kappa_f;
  spec.gamma = gamma;
  return run(spec, make_protocol(spec, kind), true, scaled_steps(2000, t_f), 201)
      .trajectory.final_fidelity;
}

Outcome pulse_amplitude() {
  PulseProtocol p;
  p.epsilon = kEps;
  double omega0 = p.omega0();
  double exact = std::sqrt(45.0) * M_PI / 20.0;
  bool ok = std::abs(omega0 - exact) <= 1e-12 && std::abs(omega0 - 1.05) / 1.05 < 5e-3;
  return {ok, "Omega0 = " + fmt(omega0)};
}

Outcome ideal_transfer() {
  double final_f = reference_closed_run().trajectory.final_fidelity;
  double onset = -1.0;
  for (double t_f = 6.0; t_f <= 10.01; t_f += 0.5) {
    SchemeSpec spec = make_spec(Scheme::FPT);
    spec.t_f = t_f;
    double f = run(spec, make_protocol(spec, PulseKind::STAP), false, 2000, 201)
                   .trajectory.final_fidelity;
    if (f >= 0.99) {
      onset = t_f;
      break;
    }
  }
  bool ok = final_f >= 0.99 && onset >= 7.0 && onset <= 9.0;
  return {ok, "final fidelity " + fmt(final_f) + ", onset t_f = " + fmt(onset)};
}

Outcome transient_leakage() {
  const auto& peaks = reference_closed_run().max_intermediate;
  double mu1 = peaks.at("mu1"), mu3 = peaks.at("mu3"), mu4 = peaks.at("mu4");
  bool ok = std::abs(mu1 - 0.0436) <= 0.005 && mu3 <= 0.02 && mu4 <= 0.02;
  return {ok, "max mu1 " + fmt(mu1) + ", mu3 " + fmt(mu3) + ", mu4 " + fmt(mu4)};
}

Outcome exact_lr_solution() {
  double worst_overlap = 0, worst_residual = 0;
  for (double eps : {kEps, std::asin(0.125), 0.3}) {
    Pulses pulses = stap_pulses(eps, 10.0, 1.0, 1.0);
    HamiltonianFn h = [&](double t) {
      return build_H_m(pulses.omega1(t), pulses.omega2(t), 1.0, 1.0);
    };
    StateVector psi = propagate_state(h, StateVector::basis(3, 0), {0.0, 10.0}, 5e-4).back();
    StateVector analytic = analytic_final_state(eps, M_PI / (2.0 * std::sin(eps)));
    worst_overlap = std::max(worst_overlap, 1.0 - std::abs(analytic.dot(psi)));

    InvariantParams params = InvariantParams::constant_gamma(eps, 10.0);
    const double dt = 1e-5;
    for (double t : linspace(0.1, 9.9, 101)) {
      Matrix d_inv = invariant_operator(params, t + dt) - invariant_operator(params, t - dt);
      d_inv *= Complex(0.0, 1.0 / (2.0 * dt));
      worst_residual = std::max(
          worst_residual, matrix_norm_max(d_inv - commutator(h(t), invariant_operator(params, t))));
    }
  }
  bool ok = worst_overlap <= 1e-6 && worst_residual <= 1e-6;
  return {ok, "overlap deficit " + fmt(worst_overlap) + ", invariant residual " +
                  fmt(worst_residual)};
}

Outcome lr_phases() {
  InvariantParams params = InvariantParams::constant_gamma(kEps, 10.0);
  Pulses pulses = stap_pulses(kEps, 10.0, 1.0, 1.0);
  HamiltonianFn h = [&](double t) {
    return build_H_m(pulses.omega1(t), pulses.omega2(t), 1.0, 1.0);
  };
  double plus = lr_phase(1, 10.0, params, h);
  double minus = lr_phase(-1, 10.0, params, h);
  double zero = lr_phase(0, 10.0, params, h);
  double target = M_PI / (2.0 * std::sin(kEps));
  bool ok = std::abs(std::abs(plus) - target) <= 1e-6 && std::abs(std::abs(minus) - target) <= 1e-6 &&
            plus * minus < 0 && std::abs(zero) <= 1e-6;
  return {ok, "alpha+ = " + fmt(plus) + ", alpha0 = " + fmt(zero)};
}

Outcome experimental_rates() {
  // (lambda, Gamma, kappa_c, kappa_f) = (2500, 10, 10, 0.152) MHz in units of
  // lambda, at the optimal operation time t_f = 8.9 for this setting
  const double kappa = 10.0 / 2500.0, kappa_f = 0.152 / 2500.0;
  double worst = 1.0;
  std::string detail;
  for (auto [scheme, m] : {std::pair{Scheme::FPT, 2}, {Scheme::BELL_AUX, 2},
                           {Scheme::BELL_TWOATOM, 2}, {Scheme::GHZ, 3}, {Scheme::W, 3},
                           {Scheme::TRANSFER, 2}}) {
    double f = open_fidelity(scheme, m, PulseKind::STAP, 8.9, kappa, kappa_f, kappa);
    worst = std::min(worst, f);
    detail += (detail.empty() ? "" : ", ") + scheme_name(scheme) + " " + fmt(f);
  }
  return {worst >= 0.99, detail};
}

Outcome decay_channel_trends() {
  auto adiabatic = [](double kc, double kf, double g) {
    return open_fidelity(Scheme::FPT, 2, PulseKind::ADIABATIC_TRIG, 100.0, kc, kf, g);
  };
  double base = adiabatic(0.0, 0.0, 0.0);
  double drop_kf = base - adiabatic(0.0, 0.1, 0.0);
  double drop_g = base - adiabatic(0.0, 0.0, 0.1);
  double drop_kc = base - adiabatic(0.1, 0.0, 0.0);

  double stap_base = open_fidelity(Scheme::FPT, 2, PulseKind::STAP, 10.0, 0.0, 0.0, 0.0);
  double stap_drop_kc = stap_base - open_fidelity(Scheme::FPT, 2, PulseKind::STAP, 10.0, 0.1, 0.0, 0.0);

  bool ok = drop_kf <= 0.02 && drop_g <= 0.02 && drop_kc >= 0.05 && stap_drop_kc < drop_kc;
  return {ok, "adiabatic drops kf " + fmt(drop_kf) + ", gamma " + fmt(drop_g) + ", kc " +
                  fmt(drop_kc) + "; shortcut kc drop " + fmt(stap_drop_kc)};
}

Outcome operation_time_window() {
  std::vector<double> grid = {9.0, 9.5, 10.0, 10.5, 11.0, 13.0, 16.0, 20.0};
  std::vector<double> fid, phi0, mu2;
  for (double t_f : grid) {
    SchemeSpec spec = make_spec(Scheme::FPT);
    spec.t_f = t_f;
    spec.kappa_c = spec.kappa_f = spec.gamma = 0.05;
    SimResult r = run(spec, make_protocol(spec, PulseKind::STAP), true,
                      scaled_steps(2000, t_f), 201);
    fid.push_back(r.trajectory.final_fidelity);
    phi0.push_back(r.max_intermediate.at("phi0"));
    mu2.push_back(r.max_intermediate.at("mu2"));
  }
  size_t argmax = 0;
  for (size_t k = 1; k < fid.size(); ++k)
    if (fid[k] > fid[argmax]) argmax = k;
  bool peak_ok = grid[argmax] <= 10.5;  // grid starts at 9, inside [8.5, 10.5]
  bool tail_ok = fid.back() < fid[argmax];
  bool monotone = true;
  for (size_t k = 1; k < grid.size(); ++k)
    if (phi0[k] > phi0[k - 1] + 1e-6 || mu2[k] > mu2[k - 1] + 1e-6) monotone = false;

  // the perturbative mu2 estimate targets the decay-free dynamics
  double predicted = mu2_population(M_PI / 4.0, kEps, 10.0, 1.0, 1.0);
  double closed_mu2 = reference_closed_run().max_intermediate.at("mu2");
  bool mu2_ok = std::abs(closed_mu2 - predicted) <= 0.05;

  bool ok = peak_ok && tail_ok && monotone && mu2_ok;
  return {ok, "peak at t_f = " + fmt(grid[argmax]) + ", max mu2 " + fmt(closed_mu2) +
                  " vs predicted " + fmt(predicted)};
}

Outcome scheme_equivalences() {
  auto fidelity_series = [](Scheme scheme, int m) {
    SchemeSpec spec = make_spec(scheme, m);
    return run(spec, make_protocol(spec, PulseKind::STAP), false, 2000, 201).trajectory.fidelity;
  };
  auto max_dev = [](const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0;
    for (size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
  };
  double d1 = max_dev(fidelity_series(Scheme::TRANSFER, 2), fidelity_series(Scheme::FPT, 2));
  double d2 = max_dev(fidelity_series(Scheme::W, 2), fidelity_series(Scheme::BELL_TWOATOM, 2));
  double d3 = max_dev(fidelity_series(Scheme::GHZ, 3), fidelity_series(Scheme::BELL_AUX, 2));

  double w3 = open_fidelity(Scheme::W, 3, PulseKind::STAP, 10.0, 0.05, 0.05, 0.05);
  double w7 = open_fidelity(Scheme::W, 7, PulseKind::STAP, 10.0, 0.05, 0.05, 0.05);

  bool ok = d1 <= 1e-9 && d2 <= 1e-9 && d3 <= 1e-9 && std::abs(w3 - w7) <= 0.01;
  return {ok, "trajectory deviations " + fmt(d1) + "/" + fmt(d2) + "/" + fmt(d3) +
                  ", W fidelity M=3 " + fmt(w3) + " vs M=7 " + fmt(w7)};
}

Outcome bell_ordering() {
  std::string detail;
  bool ok = true;
  for (double upsilon : {0.0, 0.02, 0.05, 0.1}) {
    double aux = open_fidelity(Scheme::BELL_AUX, 2, PulseKind::STAP, 10.0, upsilon, upsilon, upsilon);
    double two = open_fidelity(Scheme::BELL_TWOATOM, 2, PulseKind::STAP, 10.0, upsilon, upsilon,
                               upsilon);
    ok = ok && aux >= two;
    detail += (detail.empty() ? "" : ", ") + fmt(upsilon) + ": " + fmt(aux) + " vs " + fmt(two);
  }
  return {ok, detail};
}

Outcome numerics_hygiene() {
  // fourth-order convergence on a drive with a closed-form propagator
  auto h = [](double t) {
    Matrix m(2);
    m(0, 1) = m(1, 0) = 0.5 * std::sin(t);
    return m;
  };
  double theta = 1.0 - std::cos(2.0);
  StateVector exact(2);
  exact[0] = std::cos(theta / 2.0);
  exact[1] = Complex(0, -std::sin(theta / 2.0));
  auto error_at = [&](int steps) {
    return (propagate_state(h, StateVector::basis(2, 0), {0.0, 2.0}, 2.0 / steps).back() - exact)
        .norm();
  };
  double ratio = error_at(100) / error_at(200);
  bool order_ok = ratio >= 12.0 && ratio <= 20.0;

  // trace and positivity across an open scenario run (run() aborts on audit
  // failure; re-derive the sums here from the emitted series)
  SchemeSpec spec = make_spec(Scheme::BELL_TWOATOM);
  spec.kappa_c = spec.kappa_f = spec.gamma = 0.05;
  SimResult result = run(spec, make_protocol(spec, PulseKind::STAP), true, 2000, 201);
  Basis basis = build_basis(spec);
  bool trace_ok = true;
  for (size_t k = 0; k < result.trajectory.times.size(); ++k) {
    double total = 0;
    for (int l = 0; l < basis.dim(); ++l) {
      double p = result.trajectory.populations[static_cast<size_t>(l)][k];
      if (p < -1e-6) trace_ok = false;
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) trace_ok = false;
  }

  // sweep bytes must not depend on the worker count
  cli::SweepConfig sweep;
  sweep.spec = make_spec(Scheme::FPT);
  sweep.spec.gamma = 0.05;
  sweep.protocols.push_back({});
  sweep.axes.push_back({"t_f", {9.0, 10.0, 11.0}});
  sweep.observables = {"final_fidelity"};
  sweep.steps = 400;
  std::ostringstream log;
  sweep.output = "acceptance_sweep_1.csv";
  cli::cmd_sweep(sweep, 1, log);
  sweep.output = "acceptance_sweep_4.csv";
  cli::cmd_sweep(sweep, 4, log);
  std::ifstream a("acceptance_sweep_1.csv", std::ios::binary);
  std::ifstream b("acceptance_sweep_4.csv", std::ios::binary);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  std::remove("acceptance_sweep_1.csv");
  std::remove("acceptance_sweep_4.csv");
  bool sweep_ok = !sa.empty() && sa == sb;

  bool ok = order_ok && trace_ok && sweep_ok;
  return {ok, "RK4 error ratio " + fmt(ratio) + ", trace audit " +
                  (trace_ok ? "clean" : "violated") + ", sweep bytes " +
                  (sweep_ok ? "stable" : "divergent")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"pulse amplitude", pulse_amplitude},
      {"ideal transfer", ideal_transfer},
      {"transient leakage", transient_leakage},
      {"exact invariant solution", exact_lr_solution},
      {"accumulated mode phases", lr_phases},
      {"experimental-rate benchmark", experimental_rates},
      {"decay channel trends", decay_channel_trends},
      {"operation time window", operation_time_window},
      {"scheme equivalences", scheme_equivalences},
      {"Bell scheme ordering", bell_ordering},
      {"numerics hygiene", numerics_hygiene},
  };
  int failures = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.ok) ++failures;
    std::cout << (outcome.ok ? "PASS" : "FAIL") << " criterion " << (k + 1) << " ("
              << criteria[k].first << "): " << outcome.detail << "\n";
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
