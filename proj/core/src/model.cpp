#include "stap/model.hpp"

#include <cmath>
#include <stdexcept>

namespace stap {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

void add_coupling(Matrix& m, int i, int j, double c) {
  m(i, j) += c;
  m(j, i) += c;
}

std::string atoms(const std::vector<std::string>& parts) {
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += " ";
    s += parts[i];
  }
  return s;
}

// label format: atom states; cavity photons c1 c2; fiber photon
std::string label(const std::string& atom_block, const std::string& cavities,
                  const std::string& fiber) {
  return atom_block + ";" + cavities + ";" + fiber;
}

std::vector<std::string> ghz_atom_row(int m, char first, char middle, char last) {
  std::vector<std::string> row;
  row.emplace_back(1, first);
  for (int k = 0; k < m - 2; ++k) row.emplace_back(1, middle);
  row.emplace_back(1, last);
  return row;
}

}  // namespace

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::FPT: return "FPT";
    case Scheme::BELL_AUX: return "BELL_AUX";
    case Scheme::BELL_TWOATOM: return "BELL_TWOATOM";
    case Scheme::GHZ: return "GHZ";
    case Scheme::W: return "W";
    case Scheme::TRANSFER: return "TRANSFER";
  }
  return "FPT";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "FPT") return Scheme::FPT;
  if (name == "BELL_AUX") return Scheme::BELL_AUX;
  if (name == "BELL_TWOATOM") return Scheme::BELL_TWOATOM;
  if (name == "GHZ") return Scheme::GHZ;
  if (name == "W") return Scheme::W;
  if (name == "TRANSFER") return Scheme::TRANSFER;
  throw std::invalid_argument("unknown scheme: " + name);
}

void SchemeSpec::validate() const {
  if (t_f <= 0) throw std::invalid_argument("t_f must be positive");
  if (v <= 0) throw std::invalid_argument("v must be positive");
  if (lam <= 0) throw std::invalid_argument("lam must be positive");
  if (epsilon <= 0 || epsilon >= kPi / 2)
    throw std::invalid_argument(
        "epsilon must lie in (0, pi/2): the pulse amplitude cot(epsilon) diverges at epsilon=0");
  if (kappa_c < 0 || kappa_f < 0 || gamma < 0)
    throw std::invalid_argument("decay rates must be nonnegative");
  if (scheme == Scheme::W && m < 1) throw std::invalid_argument("W scheme requires m >= 1");
  if (scheme == Scheme::GHZ && m < 2) throw std::invalid_argument("GHZ scheme requires m >= 2");
}

Basis build_basis(const SchemeSpec& spec) {
  spec.validate();
  Basis b;
  switch (spec.scheme) {
    case Scheme::FPT:
      b.labels = {label("f g", "00", "0"), label("e g", "00", "0"), label("g g", "10", "0"),
                  label("g g", "00", "1"), label("g g", "01", "0"), label("g e", "00", "0"),
                  label("g f", "00", "0"), label("g g", "00", "0")};
      b.initial = {0};
      b.target = {6};
      b.intermediate = {1, 2, 3, 4, 5};
      b.absorbing = {7};
      break;
    case Scheme::BELL_AUX:
      b.labels = {label("f g", "00", "0"),
                  label("e g", "00", "0"),
                  label("g g", "10", "0"),
                  label("g g", "00", "1"),
                  label("g g", "01", "0"),
                  label("g e", "00", "0"),
                  label("g f", "00", "0"),
                  label("a g", "00", "0"),
                  label("g g", "00", "0") + " (photon)",
                  label("g g", "00", "0") + " (spont)"};
      b.initial = {0, 7};
      b.target = {6, 7};
      b.intermediate = {1, 2, 3, 4, 5};
      b.absorbing = {8, 9};
      break;
    case Scheme::GHZ: {
      int m = spec.m;
      auto row = [&](char first, char last) { return atoms(ghz_atom_row(m, first, 'a', last)); };
      std::string ground = row('g', 'g');
      b.labels = {label(row('f', 'g'), "00", "0"),
                  label(row('e', 'g'), "00", "0"),
                  label(ground, "10", "0"),
                  label(ground, "00", "1"),
                  label(ground, "01", "0"),
                  label(row('g', 'e'), "00", "0"),
                  label(row('g', 'f'), "00", "0"),
                  label(atoms(ghz_atom_row(m, 'a', 'g', 'g')), "00", "0"),
                  label(ground, "00", "0") + " (photon)",
                  label(ground, "00", "0") + " (spont)"};
      b.initial = {0, 7};
      b.target = {6, 7};
      b.intermediate = {1, 2, 3, 4, 5};
      b.absorbing = {8, 9};
      break;
    }
    case Scheme::BELL_TWOATOM:
      b.labels = {label("f g g", "00", "0"), label("e g g", "00", "0"), label("g g g", "10", "0"),
                  label("g g g", "00", "1"), label("g g g", "01", "0"), label("g e g", "00", "0"),
                  label("g f g", "00", "0"), label("g g e", "00", "0"), label("g g f", "00", "0"),
                  label("g g g", "00", "0")};
      b.initial = {0};
      b.target = {6, 8};
      b.intermediate = {1, 2, 3, 4, 5, 7};
      b.absorbing = {9};
      break;
    case Scheme::W:
      // G/E/W are the collective all-ground, symmetric one-e and symmetric
      // one-f states of the m atoms in cavity c2
      b.labels = {label("f G", "00", "0"), label("e G", "00", "0"), label("g G", "10", "0"),
                  label("g G", "00", "1"), label("g G", "01", "0"), label("g E", "00", "0"),
                  label("g W", "00", "0"), label("g G", "00", "0")};
      b.initial = {0};
      b.target = {6};
      b.intermediate = {1, 2, 3, 4, 5};
      b.absorbing = {7};
      break;
    case Scheme::TRANSFER:
      b.labels = {label("fg gg", "00", "0"), label("eg gg", "00", "0"), label("gg gg", "10", "0"),
                  label("ge gg", "00", "0"), label("gf gg", "00", "0"), label("gg gg", "00", "1"),
                  label("gg eg", "00", "0"), label("gg fg", "00", "0"), label("gg gg", "01", "0"),
                  label("gg ge", "00", "0"), label("gg gf", "00", "0"), label("gg gg", "00", "0")};
      b.initial = {0, 4};
      b.target = {7, 10};
      b.intermediate = {1, 2, 3, 5, 6, 8, 9};
      b.absorbing = {11};
      break;
  }
  return b;
}

HamiltonianParts build_hamiltonian_parts(const SchemeSpec& spec) {
  spec.validate();
  double lam = spec.lam;
  double v = spec.v * spec.lam;
  int dim = build_basis(spec).dim();
  HamiltonianParts p{Matrix(dim), Matrix(dim), Matrix(dim)};
  switch (spec.scheme) {
    case Scheme::FPT:
    case Scheme::BELL_AUX:
    case Scheme::GHZ:
    case Scheme::W:
      add_coupling(p.static_part, 1, 2, lam);
      add_coupling(p.static_part, 2, 3, v);
      add_coupling(p.static_part, 3, 4, v);
      add_coupling(p.static_part, 4, 5, lam);
      add_coupling(p.drive1, 1, 0, 1.0);
      add_coupling(p.drive2, 5, 6, 1.0);
      break;
    case Scheme::BELL_TWOATOM: {
      double s = lam / std::sqrt(2.0);
      add_coupling(p.static_part, 1, 2, lam);
      add_coupling(p.static_part, 2, 3, v);
      add_coupling(p.static_part, 3, 4, v);
      add_coupling(p.static_part, 4, 5, s);
      add_coupling(p.static_part, 4, 7, s);
      add_coupling(p.drive1, 1, 0, 1.0);
      add_coupling(p.drive2, 5, 6, 1.0);
      add_coupling(p.drive2, 7, 8, 1.0);
      break;
    }
    case Scheme::TRANSFER: {
      double s = lam / std::sqrt(2.0);
      add_coupling(p.static_part, 1, 2, s);
      add_coupling(p.static_part, 3, 2, s);
      add_coupling(p.static_part, 2, 5, v);
      add_coupling(p.static_part, 5, 8, v);
      add_coupling(p.static_part, 6, 8, s);
      add_coupling(p.static_part, 9, 8, s);
      add_coupling(p.drive1, 1, 0, 1.0);
      add_coupling(p.drive1, 3, 4, 1.0);
      add_coupling(p.drive2, 6, 7, 1.0);
      add_coupling(p.drive2, 9, 10, 1.0);
      break;
    }
  }
  return p;
}

Matrix build_hamiltonian(const SchemeSpec& spec, const PulseProtocol& protocol, double t) {
  if (t < 0 || t > spec.t_f) throw std::invalid_argument("t outside [0, t_f]");
  HamiltonianParts p = build_hamiltonian_parts(spec);
  return p.static_part + Complex(protocol.omega1(t)) * p.drive1 +
         Complex(protocol.omega2(t)) * p.drive2;
}

DecaySet build_lindblads(const SchemeSpec& spec) {
  spec.validate();
  Basis b = build_basis(spec);
  int dim = b.dim();
  DecaySet set;
  auto jump = [&](int dst, int src, double rate, const std::string& tag) {
    if (rate <= 0) return;
    Matrix l(dim);
    l(dst, src) = std::sqrt(rate);
    set.ops.push_back({l, tag});
  };
  double kc = spec.kappa_c * spec.lam;
  double kf = spec.kappa_f * spec.lam;
  double g2 = 0.5 * spec.gamma * spec.lam;
  switch (spec.scheme) {
    case Scheme::FPT:
      jump(7, 2, kc, "cavity1");
      jump(7, 4, kc, "cavity2");
      jump(7, 3, kf, "fiber");
      jump(0, 1, g2, "atom1->f");
      jump(7, 1, g2, "atom1->g");
      jump(6, 5, g2, "atom2->f");
      jump(7, 5, g2, "atom2->g");
      break;
    case Scheme::BELL_AUX:
    case Scheme::GHZ:
      jump(8, 2, kc, "cavity1");
      jump(8, 4, kc, "cavity2");
      jump(8, 3, kf, "fiber");
      jump(0, 1, g2, "atom1->f");
      jump(9, 1, g2, "atom1->g");
      jump(6, 5, g2, spec.scheme == Scheme::GHZ ? "atomM->f" : "atom2->f");
      jump(9, 5, g2, spec.scheme == Scheme::GHZ ? "atomM->g" : "atom2->g");
      break;
    case Scheme::BELL_TWOATOM:
      jump(9, 2, kc, "cavity1");
      jump(9, 4, kc, "cavity2");
      jump(9, 3, kf, "fiber");
      jump(0, 1, g2, "atom1->f");
      jump(9, 1, g2, "atom1->g");
      jump(6, 5, g2, "atom2->f");
      jump(9, 5, g2, "atom2->g");
      jump(8, 7, g2, "atom3->f");
      jump(9, 7, g2, "atom3->g");
      break;
    case Scheme::W:
      jump(7, 2, kc, "cavity1");
      jump(7, 4, kc, "cavity2");
      jump(7, 3, kf, "fiber");
      jump(0, 1, g2, "atom_p->f");
      jump(7, 1, g2, "atom_p->g");
      // the m per-atom f branches acting on the symmetric basis: one
      // symmetric return and one leak out of the symmetric sector
      jump(6, 5, g2 / spec.m, "atoms_c2->f(sym)");
      if (spec.m > 1) jump(7, 5, g2 * (spec.m - 1) / spec.m, "atoms_c2->f(rest)");
      jump(7, 5, g2, "atoms_c2->g");
      break;
    case Scheme::TRANSFER:
      jump(11, 2, kc, "cavity1");
      jump(11, 8, kc, "cavity2");
      jump(11, 5, kf, "fiber");
      jump(0, 1, g2, "atom1->f");
      jump(11, 1, g2, "atom1->g");
      jump(4, 3, g2, "atom2->f");
      jump(11, 3, g2, "atom2->g");
      jump(7, 6, g2, "atom3->f");
      jump(11, 6, g2, "atom3->g");
      jump(10, 9, g2, "atom4->f");
      jump(11, 9, g2, "atom4->g");
      break;
  }
  return set;
}

StateVector initial_state(const SchemeSpec& spec) {
  spec.validate();
  Basis b = build_basis(spec);
  StateVector psi(b.dim());
  for (int idx : b.initial) psi[idx] = 1.0;
  return psi.normalize();
}

StateVector target_state(const SchemeSpec& spec) {
  spec.validate();
  Basis b = build_basis(spec);
  StateVector psi(b.dim());
  switch (spec.scheme) {
    case Scheme::BELL_AUX:
    case Scheme::GHZ:
      psi[6] = -1.0;
      psi[7] = 1.0;
      break;
    default:
      for (int idx : b.target) psi[idx] = 1.0;
      break;
  }
  return psi.normalize();
}

SchemeReduction scheme_reduction(const SchemeSpec& spec) {
  spec.validate();
  int dim = build_basis(spec).dim();
  double r = 1.0 / std::sqrt(2.0);
  auto e = [dim](int k) { return StateVector::basis(dim, k); };
  SchemeReduction red;
  switch (spec.scheme) {
    case Scheme::FPT:
    case Scheme::BELL_AUX:
    case Scheme::GHZ:
    case Scheme::W:
      red.psi1 = e(0);
      red.psi7 = e(6);
      red.modes = {e(1), e(2), e(3), e(4), e(5)};
      break;
    case Scheme::BELL_TWOATOM:
      red.psi1 = e(0);
      red.psi7 = Complex(r) * (e(6) + e(8));
      red.modes = {e(1), e(2), e(3), e(4), Complex(r) * (e(5) + e(7))};
      break;
    case Scheme::TRANSFER:
      red.psi1 = Complex(r) * (e(0) + e(4));
      red.psi7 = Complex(r) * (e(7) + e(10));
      red.modes = {Complex(r) * (e(1) + e(3)), e(2), e(5), e(8), Complex(r) * (e(6) + e(9))};
      break;
  }
  return red;
}

}  // namespace stap
