#include "stap/effective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stap {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

void check_couplings(double v, double lam) {
  if (v <= 0 || lam <= 0) throw std::invalid_argument("couplings v and lam must be positive");
}
}  // namespace

Matrix intermediate_hamiltonian(double v, double lam) {
  check_couplings(v, lam);
  Matrix h(5);
  h(0, 1) = lam;
  h(1, 2) = v;
  h(2, 3) = v;
  h(3, 4) = lam;
  h(1, 0) = lam;
  h(2, 1) = v;
  h(3, 2) = v;
  h(4, 3) = lam;
  return h;
}

ZenoDecomposition intermediate_eigensystem(double v, double lam) {
  check_couplings(v, lam);
  double chi = std::sqrt(2 * v * v + lam * lam);
  ZenoDecomposition z;
  z.chi = chi;
  z.energies = {0.0, lam, -lam, chi, -chi};

  z.phi0 = StateVector(5);
  z.phi0[0] = v / chi;
  z.phi0[2] = -lam / chi;
  z.phi0[4] = v / chi;

  z.phi[0] = StateVector{-0.5, -0.5, 0.0, 0.5, 0.5};
  z.phi[1] = StateVector{-0.5, 0.5, 0.0, -0.5, 0.5};

  double c = lam / (2 * chi);
  z.phi[2] = StateVector(5);
  z.phi[2][0] = c;
  z.phi[2][1] = 0.5;
  z.phi[2][2] = v / chi;
  z.phi[2][3] = 0.5;
  z.phi[2][4] = c;
  z.phi[3] = StateVector(5);
  z.phi[3][0] = c;
  z.phi[3][1] = -0.5;
  z.phi[3][2] = v / chi;
  z.phi[3][3] = -0.5;
  z.phi[3][4] = c;

  double r = 1.0 / std::sqrt(2.0);
  z.mu[0] = Complex(r) * (z.phi[0] + z.phi[1]);
  z.mu[1] = Complex(r) * (z.phi[0] - z.phi[1]);
  z.mu[2] = Complex(r) * (z.phi[2] + z.phi[3]);
  z.mu[3] = Complex(r) * (z.phi[2] - z.phi[3]);
  return z;
}

Matrix build_H_re(double omega1, double omega2, double v, double lam) {
  check_couplings(v, lam);
  double chi = std::sqrt(2 * v * v + lam * lam);
  double r = 1.0 / std::sqrt(2.0);
  // ordering {psi1, psi7, phi0, mu1, mu2, mu3, mu4}
  Matrix h(7);
  h(2, 0) = v / chi * omega1;
  h(2, 1) = v / chi * omega2;
  h(3, 0) = -r * omega1;
  h(3, 1) = r * omega2;
  h(5, 0) = lam * r / chi * omega1;
  h(5, 1) = lam * r / chi * omega2;
  h(3, 4) = lam;
  h(5, 6) = chi;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < i; ++j) {
      if (h(i, j) != 0.0) h(j, i) = std::conj(h(i, j));
      if (h(j, i) != 0.0) h(i, j) = std::conj(h(j, i));
    }
  return h;
}

Matrix build_H_eff(double omega1, double omega2, double v, double lam) {
  check_couplings(v, lam);
  double chi = std::sqrt(2 * v * v + lam * lam);
  double r = 1.0 / std::sqrt(2.0);
  // ordering {psi1, psi7, phi0, mu1, mu2}
  Matrix h(5);
  h(2, 0) = v / chi * omega1;
  h(2, 1) = v / chi * omega2;
  h(3, 0) = -r * omega1;
  h(3, 1) = r * omega2;
  h(3, 4) = lam;
  h(0, 2) = h(2, 0);
  h(1, 2) = h(2, 1);
  h(0, 3) = h(3, 0);
  h(1, 3) = h(3, 1);
  h(4, 3) = h(3, 4);
  return h;
}

Matrix build_H_m(double omega1, double omega2, double v, double lam) {
  check_couplings(v, lam);
  double chi = std::sqrt(2 * v * v + lam * lam);
  // ordering {psi1, phi0, psi7}
  Matrix h(3);
  h(1, 0) = v / chi * omega1;
  h(1, 2) = v / chi * omega2;
  h(0, 1) = h(1, 0);
  h(2, 1) = h(1, 2);
  return h;
}

StateVector dark_state(double omega1, double omega2, double lam) {
  if (lam <= 0) throw std::invalid_argument("lam must be positive");
  if (omega1 == 0 && omega2 == 0)
    throw std::invalid_argument("dark_state is undefined at omega1 = omega2 = 0");
  StateVector d{omega2, -omega1, std::sqrt(2.0) * omega1 * omega2 / lam};
  return d.normalize();
}

double ratio_r(double omega1, double omega2) {
  double o1 = omega1 * omega1, o2 = omega2 * omega2;
  if (o1 == o2) return std::numeric_limits<double>::infinity();
  double root = std::sqrt(25 * (o1 - o2) * (o1 - o2) + 4 * o1 * o2 + 12 * (o1 + o2) + 36);
  return std::abs(std::sqrt(6.0) * (root + 7.0) / (12.0 * (o1 - o2)));
}

double ratio_r_numeric(double omega1, double omega2, double v, double lam) {
  Matrix h = build_H_eff(omega1, omega2, v, lam);
  EigenSystem es = hermitian_eigs(h);
  double scale = std::max(1.0, matrix_norm_max(h));
  // drop the exact dark kernel (its phi0 and mu1 proportions both vanish),
  // then take the symmetric pair closest to zero and average the ratios
  std::vector<int> idx;
  for (int k = 0; k < 5; ++k)
    if (std::abs(es.values[static_cast<size_t>(k)]) > 1e-9 * scale) idx.push_back(k);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(es.values[static_cast<size_t>(a)]) < std::abs(es.values[static_cast<size_t>(b)]);
  });
  if (idx.size() < 2) throw std::runtime_error("ratio_r_numeric: degenerate spectrum");
  double sum = 0;
  for (int k = 0; k < 2; ++k) {
    double p_phi0 = std::abs(es.vectors(2, idx[static_cast<size_t>(k)]));
    double p_mu1 = std::abs(es.vectors(3, idx[static_cast<size_t>(k)]));
    sum += p_phi0 / p_mu1;
  }
  return 0.5 * sum;
}

double mu2_population(double beta, double epsilon, double t_f, double v, double lam) {
  check_couplings(v, lam);
  if (t_f <= 0) throw std::invalid_argument("t_f must be positive");
  double chi = std::sqrt(2 * v * v + lam * lam);
  double c = chi * kPi / std::tan(epsilon) * std::sin(beta) * std::cos(beta) / (2 * v);
  double lt = lam * t_f;
  return 2 * c * c / (lt * lt + 2 * c * c);
}

}  // namespace stap
