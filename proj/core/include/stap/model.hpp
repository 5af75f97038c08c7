#ifndef STAP_MODEL_HPP
#define STAP_MODEL_HPP

#include <array>
#include <string>
#include <vector>

#include "stap/invariant.hpp"
#include "stap/numerics.hpp"

namespace stap {

enum class Scheme { FPT, BELL_AUX, BELL_TWOATOM, GHZ, W, TRANSFER };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct SchemeSpec {
  Scheme scheme = Scheme::FPT;
  int m = 2;          // GHZ: total atom count, W: atoms in cavity c2
  double v = 1.0;     // cavity-fiber coupling, units of lam
  double lam = 1.0;   // the global unit
  double epsilon = 0.25268025514207865;
  double t_f = 10.0;
  double kappa_c = 0.0;
  double kappa_f = 0.0;
  double gamma = 0.0;

  void validate() const;
  bool operator==(const SchemeSpec&) const = default;
};

// Ordered basis with role sets. initial/target hold the support indices of
// the initial/target state (a singleton unless the state is a superposition).
struct Basis {
  std::vector<std::string> labels;
  std::vector<int> initial;
  std::vector<int> target;
  std::vector<int> intermediate;
  std::vector<int> absorbing;

  int dim() const { return static_cast<int>(labels.size()); }
};

struct DecayOp {
  Matrix op;
  std::string tag;  // cavity1, cavity2, fiber, atomK->f, atomK->g, ...
};

struct DecaySet {
  std::vector<DecayOp> ops;
};

// H(t) = static + omega1(t) * drive1 + omega2(t) * drive2
struct HamiltonianParts {
  Matrix static_part;
  Matrix drive1;
  Matrix drive2;
};

Basis build_basis(const SchemeSpec& spec);
HamiltonianParts build_hamiltonian_parts(const SchemeSpec& spec);
Matrix build_hamiltonian(const SchemeSpec& spec, const PulseProtocol& protocol, double t);
DecaySet build_lindblads(const SchemeSpec& spec);
StateVector initial_state(const SchemeSpec& spec);
StateVector target_state(const SchemeSpec& spec);

// Embedding of the seven-state chain into the scheme basis: the drive
// endpoints and the five intermediate modes. Every scheme's Hamiltonian is
// entrywise identical to the FPT one under this map.
struct SchemeReduction {
  StateVector psi1;
  StateVector psi7;
  std::array<StateVector, 5> modes;  // psi2..psi6 analogues
};

SchemeReduction scheme_reduction(const SchemeSpec& spec);

}  // namespace stap

#endif
