#include "stap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stap {

StateVector StateVector::basis(int dim, int k) {
  if (k < 0 || k >= dim) throw std::invalid_argument("basis index out of range");
  StateVector v(dim);
  v[k] = 1.0;
  return v;
}

double StateVector::norm() const {
  double s = 0;
  for (const Complex& c : a_) s += std::norm(c);
  return std::sqrt(s);
}

StateVector& StateVector::normalize() {
  double n = norm();
  if (n == 0) throw std::invalid_argument("cannot normalize zero vector");
  for (Complex& c : a_) c /= n;
  return *this;
}

Complex StateVector::dot(const StateVector& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch in dot");
  Complex s = 0;
  for (int i = 0; i < dim(); ++i) s += std::conj(a_[static_cast<size_t>(i)]) * other[i];
  return s;
}

StateVector& StateVector::operator+=(const StateVector& o) {
  if (dim() != o.dim()) throw std::invalid_argument("dimension mismatch");
  for (int i = 0; i < dim(); ++i) a_[static_cast<size_t>(i)] += o[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  if (dim() != o.dim()) throw std::invalid_argument("dimension mismatch");
  for (int i = 0; i < dim(); ++i) a_[static_cast<size_t>(i)] -= o[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex c) {
  for (Complex& x : a_) x *= c;
  return *this;
}

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

Complex Matrix::trace() const {
  Complex s = 0;
  for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

bool Matrix::is_hermitian(double tol) const {
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex c) {
  for (Complex& x : e_) x *= c;
  return *this;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  Matrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int k = 0; k < dim_; ++k) {
      Complex a = (*this)(r, k);
      if (a == 0.0) continue;
      for (int c = 0; c < dim_; ++c) m(r, c) += a * o(k, c);
    }
  return m;
}

StateVector Matrix::apply(const StateVector& v) const {
  if (dim_ != v.dim()) throw std::invalid_argument("dimension mismatch");
  StateVector out(dim_);
  for (int r = 0; r < dim_; ++r) {
    Complex s = 0;
    for (int c = 0; c < dim_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

Matrix outer(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in outer");
  Matrix m(a.dim());
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) m(r, c) = a[r] * std::conj(b[c]);
  return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in commutator");
  return a * b - b * a;
}

double matrix_norm_max(const Matrix& a) {
  double m = 0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c)));
  return m;
}

namespace {

double off_diag_max(const Matrix& a) {
  double m = 0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (r != c) m = std::max(m, std::abs(a(r, c)));
  return m;
}

// Unitary 2x2 diagonalization of the Hermitian block [[app, apq], [apq*, aqq]].
// Columns of (j00 j01; j10 j11) are the eigenvectors. The smaller tangent root
// keeps the rotation angle below pi/4 and the columns exactly unit-norm, so no
// accuracy is lost when |apq| is small against the diagonal gap.
void jacobi_rotation(double app, double aqq, Complex apq, Complex& j00, Complex& j01, Complex& j10,
                     Complex& j11) {
  double absq = std::abs(apq);
  Complex phase = apq / absq;
  double zeta = (aqq - app) / (2.0 * absq);
  double t = zeta == 0.0 ? 1.0
                         : std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
  double c = 1.0 / std::sqrt(1.0 + t * t);
  double s = t * c;
  j00 = c;
  j01 = s;
  j10 = -s * std::conj(phase);
  j11 = c * std::conj(phase);
}

}  // namespace

EigenSystem hermitian_eigs(const Matrix& input) {
  const int n = input.dim();
  if (n <= 0 || n > 64) throw std::invalid_argument("hermitian_eigs: dim must be in [1, 64]");
  if (!input.is_hermitian(1e-12 * std::max(1.0, matrix_norm_max(input))))
    throw std::invalid_argument("hermitian_eigs: matrix is not Hermitian");

  Matrix a = input;
  // exact Hermitization of the working copy so the iteration stays symmetric
  for (int r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (int c = r + 1; c < n; ++c) {
      Complex avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  Matrix v = Matrix::identity(n);

  const double scale = std::max(1.0, matrix_norm_max(a));
  const double threshold = 1e-14 * scale;
  const int max_sweeps = 100;

  int sweep = 0;
  for (; sweep < max_sweeps && off_diag_max(a) > threshold; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= threshold) continue;
        Complex j00, j01, j10, j11;
        jacobi_rotation(a(p, p).real(), a(q, q).real(), a(p, q), j00, j01, j10, j11);
        // A <- J^+ A J on columns/rows p, q
        for (int k = 0; k < n; ++k) {
          Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * j00 + akq * j10;
          a(k, q) = akp * j01 + akq * j11;
        }
        for (int k = 0; k < n; ++k) {
          Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
          a(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int k = 0; k < n; ++k) {
          Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * j00 + vkq * j10;
          v(k, q) = vkp * j01 + vkq * j11;
        }
      }
    }
  }
  if (off_diag_max(a) > threshold)
    throw std::runtime_error("hermitian_eigs: no convergence after " + std::to_string(max_sweeps) +
                             " sweeps, off-diagonal residual " + std::to_string(off_diag_max(a)));

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem es;
  es.values.resize(static_cast<size_t>(n));
  es.vectors = Matrix(n);
  for (int k = 0; k < n; ++k) {
    es.values[static_cast<size_t>(k)] = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
    for (int r = 0; r < n; ++r) es.vectors(r, k) = v(r, order[static_cast<size_t>(k)]);
  }
  return es;
}

double min_eigenvalue(const Matrix& a) { return hermitian_eigs(a).values.front(); }

namespace {

int substep_count(double t0, double t1, double step) {
  double span = t1 - t0;
  if (span <= 0) throw std::invalid_argument("time grid must be strictly increasing");
  return std::max(1, static_cast<int>(std::ceil(span / step - 1e-12)));
}

}  // namespace

std::vector<StateVector> propagate_state(const HamiltonianFn& h, const StateVector& psi0,
                                         const std::vector<double>& t_grid, double step) {
  if (step <= 0) throw std::invalid_argument("propagate_state: step must be positive");
  if (t_grid.empty()) throw std::invalid_argument("propagate_state: empty time grid");

  const Complex mi(0.0, -1.0);
  auto rhs = [&](double t, const StateVector& y) {
    Matrix ht = h(t);
    if (ht.dim() != y.dim()) throw std::invalid_argument("propagate_state: dimension mismatch");
    return mi * ht.apply(y);
  };

  std::vector<StateVector> out;
  out.reserve(t_grid.size());
  StateVector psi = psi0;
  out.push_back(psi);
  for (size_t i = 0; i + 1 < t_grid.size(); ++i) {
    int sub = substep_count(t_grid[i], t_grid[i + 1], step);
    double dt = (t_grid[i + 1] - t_grid[i]) / sub;
    double t = t_grid[i];
    for (int s = 0; s < sub; ++s) {
      StateVector k1 = rhs(t, psi);
      StateVector k2 = rhs(t + dt / 2, psi + Complex(dt / 2) * k1);
      StateVector k3 = rhs(t + dt / 2, psi + Complex(dt / 2) * k2);
      StateVector k4 = rhs(t + dt, psi + Complex(dt) * k3);
      psi += Complex(dt / 6) * (k1 + Complex(2) * k2 + Complex(2) * k3 + k4);
      t += dt;
    }
    out.push_back(psi);
  }
  return out;
}

std::vector<Matrix> propagate_density(const HamiltonianFn& h, const std::vector<Matrix>& lindblads,
                                      const Matrix& rho0, const std::vector<double>& t_grid,
                                      double step) {
  if (step <= 0) throw std::invalid_argument("propagate_density: step must be positive");
  if (t_grid.empty()) throw std::invalid_argument("propagate_density: empty time grid");
  for (const Matrix& l : lindblads)
    if (l.dim() != rho0.dim()) throw std::invalid_argument("propagate_density: Lindblad dimension mismatch");

  std::vector<Matrix> ldl;
  ldl.reserve(lindblads.size());
  for (const Matrix& l : lindblads) ldl.push_back(l.adjoint() * l);

  const Complex im(0.0, 1.0);
  auto rhs = [&](double t, const Matrix& r) {
    Matrix ht = h(t);
    if (ht.dim() != r.dim()) throw std::invalid_argument("propagate_density: dimension mismatch");
    Matrix d = im * (r * ht - ht * r);
    for (size_t k = 0; k < lindblads.size(); ++k) {
      const Matrix& l = lindblads[k];
      d += l * r * l.adjoint();
      d -= Complex(0.5) * (ldl[k] * r + r * ldl[k]);
    }
    return d;
  };

  auto symmetrize = [](Matrix& r) {
    for (int i = 0; i < r.dim(); ++i) {
      r(i, i) = r(i, i).real();
      for (int j = i + 1; j < r.dim(); ++j) {
        Complex avg = 0.5 * (r(i, j) + std::conj(r(j, i)));
        r(i, j) = avg;
        r(j, i) = std::conj(avg);
      }
    }
  };

  std::vector<Matrix> out;
  out.reserve(t_grid.size());
  Matrix rho = rho0;
  out.push_back(rho);
  for (size_t i = 0; i + 1 < t_grid.size(); ++i) {
    int sub = substep_count(t_grid[i], t_grid[i + 1], step);
    double dt = (t_grid[i + 1] - t_grid[i]) / sub;
    double t = t_grid[i];
    for (int s = 0; s < sub; ++s) {
      Matrix k1 = rhs(t, rho);
      Matrix k2 = rhs(t + dt / 2, rho + Complex(dt / 2) * k1);
      Matrix k3 = rhs(t + dt / 2, rho + Complex(dt / 2) * k2);
      Matrix k4 = rhs(t + dt, rho + Complex(dt) * k3);
      rho += Complex(dt / 6) * (k1 + Complex(2) * k2 + Complex(2) * k3 + k4);
      symmetrize(rho);
      t += dt;
    }
    out.push_back(rho);
  }
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least two points");
  std::vector<double> t(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<size_t>(i)] = a + (b - a) * i / (n - 1);
  t.back() = b;
  return t;
}

double simpson(const std::vector<double>& values, double dx) {
  const size_t n = values.size();
  if (n < 2) return 0.0;
  size_t pairs = (n - 1) / 2;
  double s = 0;
  for (size_t k = 0; k < pairs; ++k)
    s += values[2 * k] + 4 * values[2 * k + 1] + values[2 * k + 2];
  s *= dx / 3;
  if ((n - 1) % 2 != 0) s += 0.5 * dx * (values[n - 2] + values[n - 1]);
  return s;
}

}  // namespace stap
