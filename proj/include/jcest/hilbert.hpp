#pragma once

// Dense linear algebra on small finite-dimensional Hilbert spaces.
//
// Composite qubit (x) oscillator indices follow the convention
//   k = j * d + m,   j in {0 = |e>, 1 = |g>},   m = Fock index in [0, d),
// i.e. the qubit factor comes first.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "jcest/tolerances.hpp"

namespace jcest::hilbert {

using cplx = std::complex<double>;

class Operator {
 public:
  Operator() = default;
  explicit Operator(std::size_t dim) : dim_(dim), a_(dim * dim, cplx(0.0, 0.0)) {
    if (dim == 0) throw std::invalid_argument("Operator: dimension must be positive");
  }

  static Operator identity(std::size_t dim) {
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i) op(i, i) = 1.0;
    return op;
  }

  std::size_t dim() const { return dim_; }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> a_;
};

inline void check_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

inline Operator operator+(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "operator+");
  Operator r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline Operator operator-(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "operator-");
  Operator r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline Operator operator*(cplx s, const Operator& a) {
  Operator r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = s * a(i, j);
  return r;
}

inline Operator operator*(const Operator& a, cplx s) { return s * a; }

/// Matrix product a * b.
inline Operator operator*(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  Operator r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

inline Operator adjoint(const Operator& a) {
  Operator r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

inline cplx trace(const Operator& a) {
  cplx t(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

inline double max_abs(const Operator& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

/// Diagonal part of an operator; for a density matrix this is its dephasing
/// in the computational basis.
inline Operator diagonal_part(const Operator& a) {
  Operator d(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) d(i, i) = a(i, i);
  return d;
}

inline double max_abs_diff(const Operator& a, const Operator& b) {
  check_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

/// max_{ij} |A_ij - conj(A_ji)|, zero for an exactly Hermitian matrix.
inline double hermiticity_defect(const Operator& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

inline bool is_hermitian(const Operator& a, double tol = kHermitianTol) {
  return hermiticity_defect(a) <= tol;
}

inline bool is_unitary(const Operator& u, double tol = kUnitaryTol) {
  return max_abs_diff(adjoint(u) * u, Operator::identity(u.dim())) <= tol;
}

struct StateVector {
  std::vector<cplx> amps;

  StateVector() = default;
  explicit StateVector(std::size_t dim) : amps(dim, cplx(0.0, 0.0)) {
    if (dim == 0) throw std::invalid_argument("StateVector: dimension must be positive");
  }

  std::size_t dim() const { return amps.size(); }

  double norm_sq() const {
    double s = 0.0;
    for (const cplx& a : amps) s += std::norm(a);
    return s;
  }
};

/// <a|b>, conjugate-linear in the first argument.
inline cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
  return s;
}

inline StateVector apply(const Operator& op, const StateVector& v) {
  if (op.dim() != v.dim()) throw std::invalid_argument("apply: dimension mismatch");
  StateVector r(v.dim());
  for (std::size_t i = 0; i < op.dim(); ++i) {
    cplx s(0.0, 0.0);
    for (std::size_t j = 0; j < op.dim(); ++j) s += op(i, j) * v.amps[j];
    r.amps[i] = s;
  }
  return r;
}

/// Projector |v><v|.
inline Operator outer(const StateVector& v) {
  Operator r(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) r(i, j) = v.amps[i] * std::conj(v.amps[j]);
  return r;
}

inline StateVector tensor_product(const StateVector& qubit, const StateVector& field) {
  StateVector r(qubit.dim() * field.dim());
  for (std::size_t j = 0; j < qubit.dim(); ++j)
    for (std::size_t m = 0; m < field.dim(); ++m)
      r.amps[j * field.dim() + m] = qubit.amps[j] * field.amps[m];
  return r;
}

inline Operator tensor_product(const Operator& qubit, const Operator& field) {
  const std::size_t d = field.dim();
  Operator r(qubit.dim() * d);
  for (std::size_t j1 = 0; j1 < qubit.dim(); ++j1)
    for (std::size_t j2 = 0; j2 < qubit.dim(); ++j2)
      for (std::size_t m1 = 0; m1 < d; ++m1)
        for (std::size_t m2 = 0; m2 < d; ++m2)
          r(j1 * d + m1, j2 * d + m2) = qubit(j1, j2) * field(m1, m2);
  return r;
}

enum class Keep { qubit, field };

/// Partial trace of a density operator on C^2 (x) C^d over the discarded factor.
inline Operator partial_trace(const Operator& rho, std::size_t field_dim, Keep keep) {
  if (field_dim == 0) throw std::invalid_argument("partial_trace: field dimension must be positive");
  if (rho.dim() != 2 * field_dim)
    throw std::invalid_argument("partial_trace: operator dimension " + std::to_string(rho.dim()) +
                                " does not match subsystem dims (2, " + std::to_string(field_dim) + ")");
  if (keep == Keep::qubit) {
    Operator r(2);
    for (std::size_t j1 = 0; j1 < 2; ++j1)
      for (std::size_t j2 = 0; j2 < 2; ++j2) {
        cplx s(0.0, 0.0);
        for (std::size_t m = 0; m < field_dim; ++m) s += rho(j1 * field_dim + m, j2 * field_dim + m);
        r(j1, j2) = s;
      }
    return r;
  }
  Operator r(field_dim);
  for (std::size_t m1 = 0; m1 < field_dim; ++m1)
    for (std::size_t m2 = 0; m2 < field_dim; ++m2) {
      cplx s(0.0, 0.0);
      for (std::size_t j = 0; j < 2; ++j) s += rho(j * field_dim + m1, j * field_dim + m2);
      r(m1, m2) = s;
    }
  return r;
}

}  // namespace jcest::hilbert
