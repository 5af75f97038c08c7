#ifndef STAP_EFFECTIVE_HPP
#define STAP_EFFECTIVE_HPP

#include <array>

#include "stap/numerics.hpp"

namespace stap {

// Eigenvectors of the intermediate Hamiltonian on the ordered five-state block
// {psi2, psi3, psi4, psi5, psi6}, and the Zeno-partition combinations
// mu1 = (phi1+phi2)/sqrt2, mu2 = (phi1-phi2)/sqrt2,
// mu3 = (phi3+phi4)/sqrt2, mu4 = (phi3-phi4)/sqrt2.
struct ZenoDecomposition {
  StateVector phi0;
  std::array<StateVector, 4> phi;  // phi1..phi4
  std::array<StateVector, 4> mu;   // mu1..mu4
  std::array<double, 5> energies;  // {0, lam, -lam, chi, -chi}
  double chi = 0;
};

// 5x5 block of H_ac + H_cf on {psi2..psi6}.
Matrix intermediate_hamiltonian(double v, double lam);

ZenoDecomposition intermediate_eigensystem(double v, double lam);

// 7x7 on {psi1, psi7, phi0, mu1, mu2, mu3, mu4}.
Matrix build_H_re(double omega1, double omega2, double v, double lam);

// 5x5 on {psi1, psi7, phi0, mu1, mu2}.
Matrix build_H_eff(double omega1, double omega2, double v, double lam);

// 3x3 on {psi1, phi0, psi7}.
Matrix build_H_m(double omega1, double omega2, double v, double lam);

// Normalized (Omega2, -Omega1, sqrt2 Omega1 Omega2 / lam) on {psi1, psi7, mu2}.
StateVector dark_state(double omega1, double omega2, double lam);

// Proportion ratio |P_phi0 / P_mu1| in the near-zero eigenstates of H_eff.
// Closed form, valid at v = lam = 1; +inf at omega1 = omega2.
double ratio_r(double omega1, double omega2);
double ratio_r_numeric(double omega1, double omega2, double v, double lam);

// Predicted mu2 population 2C^2/((lam t_f)^2 + 2C^2),
// C = chi pi cot(eps) sin(beta) cos(beta) / (2v).
double mu2_population(double beta, double epsilon, double t_f, double v, double lam);

}  // namespace stap

#endif
