#ifndef STAP_INVARIANT_HPP
#define STAP_INVARIANT_HPP

#include <array>
#include <functional>

#include "stap/numerics.hpp"

namespace stap {

enum class PulseKind { STAP, ADIABATIC_TRIG, ADIABATIC_EXP };

// Closed-form drive pair (Omega1(t), Omega2(t)).
struct PulseProtocol {
  PulseKind kind = PulseKind::STAP;
  double epsilon = 0.25268025514207865;  // asin(0.25); STAP only
  double t_f = 10.0;
  double v = 1.0;
  double lam = 1.0;
  double amp = 1.0;       // adiabatic amplitude, units of lam
  double exponent = 1.2;  // ADIABATIC_EXP
  double amp_ratio = 0.5; // ADIABATIC_EXP Omega1 prefactor

  void validate() const;
  double chi() const;     // sqrt(2 v^2 + lam^2)
  double omega0() const;  // STAP amplitude chi*pi*cot(eps)/(2 v t_f)
  double omega1(double t) const;
  double omega2(double t) const;
};

struct Pulses {
  std::function<double(double)> omega1, omega2;
};

Pulses stap_pulses(double epsilon, double t_f, double v, double lam);
Pulses adiabatic_pulses(const PulseProtocol& protocol);

// Invariant parametrization; the constant-gamma instance is the one exercised
// throughout, but arbitrary (gamma(t), beta(t)) are accepted.
struct InvariantParams {
  std::function<double(double)> gamma;
  std::function<double(double)> beta;
  double chi0 = 1.0;
  double t_f = 10.0;
  double v = 1.0;
  double lam = 1.0;

  static InvariantParams constant_gamma(double epsilon, double t_f, double v = 1.0,
                                        double lam = 1.0, double chi0 = 1.0);
};

// 3x3 on the ordered triple {psi1, phi0, psi7}.
Matrix invariant_operator(const InvariantParams& params, double t);

// {theta0, theta+, theta-} on {psi1, phi0, psi7}, orthonormal.
std::array<StateVector, 3> invariant_eigenstates(double gamma, double beta);

// General inverse map from (gamma, beta) to the drive pair; derivatives by
// centered differences.
Pulses pulses_from_invariant(const InvariantParams& params);

// Lewis-Riesenfeld phase alpha_n(t) for mode n in {-1, 0, +1} (n=+1 is the
// +chi0 eigenstate), by Simpson quadrature of <theta_n| i d/dt - H |theta_n>.
double lr_phase(int n, double t, const InvariantParams& params, const HamiltonianFn& h);

// Exact final state of the three-level evolution on {psi1, phi0, psi7},
// evaluated as the invariant mode sum with coefficients fixed at t=0.
StateVector analytic_final_state(double epsilon, double alpha);

// epsilon with alpha(epsilon) = pi/(2 sin eps) = 2 N pi
double epsilon_for_order(int n);

}  // namespace stap

#endif
