#ifndef STAP_NUMERICS_HPP
#define STAP_NUMERICS_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace stap {

using Complex = std::complex<double>;

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int dim) : a_(static_cast<size_t>(dim)) {}
  StateVector(std::initializer_list<Complex> amps) : a_(amps) {}

  static StateVector basis(int dim, int k);

  int dim() const { return static_cast<int>(a_.size()); }
  Complex& operator[](int i) { return a_[static_cast<size_t>(i)]; }
  const Complex& operator[](int i) const { return a_[static_cast<size_t>(i)]; }

  double norm() const;
  StateVector& normalize();
  // <this|other>
  Complex dot(const StateVector& other) const;

  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(Complex c);
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(Complex c, StateVector v) { return v *= c; }

 private:
  std::vector<Complex> a_;
};

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim) : dim_(dim), e_(static_cast<size_t>(dim) * dim) {}

  static Matrix identity(int dim);

  int dim() const { return dim_; }
  Complex& operator()(int r, int c) { return e_[static_cast<size_t>(r) * dim_ + c]; }
  const Complex& operator()(int r, int c) const { return e_[static_cast<size_t>(r) * dim_ + c]; }

  Matrix adjoint() const;
  Complex trace() const;
  bool is_hermitian(double tol = 1e-12) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Complex c);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Complex c, Matrix m) { return m *= c; }
  Matrix operator*(const Matrix& o) const;
  StateVector apply(const StateVector& v) const;

 private:
  int dim_ = 0;
  std::vector<Complex> e_;
};

using Operator = Matrix;
using DensityMatrix = Matrix;

// |a><b|
Matrix outer(const StateVector& a, const StateVector& b);

Matrix commutator(const Matrix& a, const Matrix& b);
double matrix_norm_max(const Matrix& a);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // k-th column is the eigenvector of values[k]
};

// Cyclic Jacobi diagonalization for Hermitian matrices (dim <= 64).
EigenSystem hermitian_eigs(const Matrix& a);

double min_eigenvalue(const Matrix& a);

using HamiltonianFn = std::function<Matrix(double)>;

// Fixed-step RK4 solution of i d/dt psi = H(t) psi, sampled at t_grid.
// step is the RK4 substep size; each grid segment is subdivided to respect it.
std::vector<StateVector> propagate_state(const HamiltonianFn& h, const StateVector& psi0,
                                         const std::vector<double>& t_grid, double step);

// Fixed-step RK4 on d/dt rho = i[rho,H] + sum_k (L rho L^+ - {L^+L, rho}/2),
// with Hermitian symmetrization after every substep.
std::vector<Matrix> propagate_density(const HamiltonianFn& h, const std::vector<Matrix>& lindblads,
                                      const Matrix& rho0, const std::vector<double>& t_grid,
                                      double step);

std::vector<double> linspace(double a, double b, int n);

// Composite Simpson rule over uniformly spaced samples (trapezoid fallback on
// the last interval when the point count is even).
double simpson(const std::vector<double>& values, double dx);

}  // namespace stap

#endif
