#include "stap/invariant.hpp"

#include <cmath>
#include <stdexcept>

namespace stap {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void PulseProtocol::validate() const {
  if (t_f <= 0) throw std::invalid_argument("t_f must be positive");
  if (v <= 0) throw std::invalid_argument("v must be positive");
  if (lam <= 0) throw std::invalid_argument("lam must be positive");
  if (kind == PulseKind::STAP) {
    if (epsilon <= 0 || epsilon >= kPi / 2)
      throw std::invalid_argument(
          "epsilon must lie in (0, pi/2): the pulse amplitude cot(epsilon) diverges at epsilon=0");
  } else {
    if (amp <= 0) throw std::invalid_argument("amp must be positive");
    if (kind == PulseKind::ADIABATIC_EXP && exponent < 0)
      throw std::invalid_argument("exponent must be nonnegative");
  }
}

// v is expressed in units of lam
double PulseProtocol::chi() const { return lam * std::sqrt(2 * v * v + 1.0); }

double PulseProtocol::omega0() const {
  if (kind != PulseKind::STAP) throw std::logic_error("omega0 is defined for STAP pulses only");
  return chi() * kPi / std::tan(epsilon) / (2 * v * t_f);
}

double PulseProtocol::omega1(double t) const {
  double beta = kPi * t / (2 * t_f);
  switch (kind) {
    case PulseKind::STAP:
      return omega0() * std::sin(beta);
    case PulseKind::ADIABATIC_TRIG:
      return amp * lam * std::sin(beta);
    case PulseKind::ADIABATIC_EXP:
      return amp_ratio * amp * lam * std::pow(std::sin(beta), exponent);
  }
  return 0;
}

double PulseProtocol::omega2(double t) const {
  double beta = kPi * t / (2 * t_f);
  switch (kind) {
    case PulseKind::STAP:
      return omega0() * std::cos(beta);
    case PulseKind::ADIABATIC_TRIG:
      return amp * lam * std::cos(beta);
    case PulseKind::ADIABATIC_EXP:
      return amp * lam * std::pow(std::cos(beta), exponent);
  }
  return 0;
}

Pulses stap_pulses(double epsilon, double t_f, double v, double lam) {
  PulseProtocol p;
  p.kind = PulseKind::STAP;
  p.epsilon = epsilon;
  p.t_f = t_f;
  p.v = v;
  p.lam = lam;
  p.validate();
  return {[p](double t) { return p.omega1(t); }, [p](double t) { return p.omega2(t); }};
}

Pulses adiabatic_pulses(const PulseProtocol& protocol) {
  if (protocol.kind == PulseKind::STAP)
    throw std::invalid_argument("adiabatic_pulses requires an adiabatic protocol kind");
  protocol.validate();
  PulseProtocol p = protocol;
  return {[p](double t) { return p.omega1(t); }, [p](double t) { return p.omega2(t); }};
}

InvariantParams InvariantParams::constant_gamma(double epsilon, double t_f, double v, double lam,
                                                double chi0) {
  InvariantParams params;
  params.gamma = [epsilon](double) { return epsilon; };
  params.beta = [t_f](double t) { return kPi * t / (2 * t_f); };
  params.chi0 = chi0;
  params.t_f = t_f;
  params.v = v;
  params.lam = lam;
  return params;
}

Matrix invariant_operator(const InvariantParams& params, double t) {
  double g = params.gamma(t);
  double b = params.beta(t);
  // ordering {psi1, phi0, psi7}
  Matrix m(3);
  const Complex i(0.0, 1.0);
  m(1, 0) = params.chi0 * std::cos(g) * std::sin(b);
  m(1, 2) = params.chi0 * std::cos(g) * std::cos(b);
  m(2, 0) = params.chi0 * i * std::sin(g);
  m(0, 1) = std::conj(m(1, 0));
  m(2, 1) = std::conj(m(1, 2));
  m(0, 2) = std::conj(m(2, 0));
  return m;
}

std::array<StateVector, 3> invariant_eigenstates(double gamma, double beta) {
  const Complex i(0.0, 1.0);
  double cg = std::cos(gamma), sg = std::sin(gamma);
  double cb = std::cos(beta), sb = std::sin(beta);
  StateVector theta0{cg * cb, -i * sg, -cg * sb};
  double r = 1.0 / std::sqrt(2.0);
  StateVector thetap(3);
  thetap[0] = r * (sg * cb + i * sb);
  thetap[1] = r * i * cg;
  thetap[2] = -r * (sg * sb - i * cb);
  StateVector thetam(3);
  thetam[0] = r * (sg * cb - i * sb);
  thetam[1] = r * i * cg;
  thetam[2] = -r * (sg * sb + i * cb);
  return {theta0, thetap, thetam};
}

Pulses pulses_from_invariant(const InvariantParams& params) {
  auto gamma = params.gamma;
  auto beta = params.beta;
  // chi / v_physical with v in units of lam
  double chi = params.lam * std::sqrt(2 * params.v * params.v + 1.0);
  double v = params.v * params.lam;
  const double h = 1e-6;
  auto dgamma = [gamma, h](double t) { return (gamma(t + h) - gamma(t - h)) / (2 * h); };
  auto dbeta = [beta, h](double t) { return (beta(t + h) - beta(t - h)) / (2 * h); };
  auto omega1 = [=](double t) {
    double g = gamma(t), b = beta(t);
    return chi / v * (dbeta(t) / std::tan(g) * std::sin(b) + dgamma(t) * std::cos(b));
  };
  auto omega2 = [=](double t) {
    double g = gamma(t), b = beta(t);
    return chi / v * (dbeta(t) / std::tan(g) * std::cos(b) - dgamma(t) * std::sin(b));
  };
  return {omega1, omega2};
}

double lr_phase(int n, double t, const InvariantParams& params, const HamiltonianFn& h) {
  if (n < -1 || n > 1) throw std::invalid_argument("lr_phase: mode index must be -1, 0 or +1");
  if (t < 0) throw std::invalid_argument("lr_phase: t must be nonnegative");
  if (t == 0) return 0;
  int mode = (n == 0) ? 0 : (n > 0 ? 1 : 2);
  const Complex i(0.0, 1.0);
  const double dt = 1e-7;
  auto integrand = [&](double tt) {
    auto th = invariant_eigenstates(params.gamma(tt), params.beta(tt))[static_cast<size_t>(mode)];
    auto thp = invariant_eigenstates(params.gamma(tt + dt), params.beta(tt + dt))[static_cast<size_t>(mode)];
    auto thm = invariant_eigenstates(params.gamma(tt - dt), params.beta(tt - dt))[static_cast<size_t>(mode)];
    StateVector dth = Complex(1.0 / (2 * dt)) * (thp - thm);
    Complex val = th.dot(i * dth) - th.dot(h(tt).apply(th));
    return val.real();
  };
  const int points = 1001;
  std::vector<double> vals(points);
  std::vector<double> grid = linspace(0, t, points);
  for (int k = 0; k < points; ++k) vals[static_cast<size_t>(k)] = integrand(grid[static_cast<size_t>(k)]);
  return simpson(vals, t / (points - 1));
}

StateVector analytic_final_state(double epsilon, double alpha) {
  const Complex i(0.0, 1.0);
  double se = std::sin(epsilon), ce = std::cos(epsilon);
  double sa = std::sin(alpha), ca = std::cos(alpha);
  StateVector out(3);
  out[0] = se * sa;
  out[1] = -i * se * ce + i * se * ce * ca;
  out[2] = -ce * ce - se * se * ca;
  return out;
}

double epsilon_for_order(int n) {
  if (n <= 0) throw std::invalid_argument("epsilon_for_order: n must be positive");
  return std::asin(1.0 / (4.0 * n));
}

}  // namespace stap
