#pragma once

// Hermitian eigendecomposition by cyclic complex Jacobi rotations, plus the
// spectral construction of exp(-i omega G). Self-contained on purpose: the
// matrices in this library are small (dim <= a few hundred) and a dependency
// on an external LAPACK build is not worth carrying for that.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jcest/hilbert.hpp"

namespace jcest::hilbert {

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Operator eigenvectors;            // column k is the eigenvector of eigenvalues[k]
};

namespace detail {

inline double frobenius(const Operator& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline double off_diag_norm(const Operator& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace detail

inline SpectralDecomposition eig_hermitian(const Operator& a) {
  const std::size_t n = a.dim();
  if (hermiticity_defect(a) > kEigInputTol)
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");

  // Work on the Hermitian part so roundoff in the input cannot leak into
  // complex eigenvalues.
  Operator w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  Operator v = Operator::identity(n);

  const double scale = detail::frobenius(w);
  const double stop = 1e-14 * std::max(1.0, scale);
  const int max_sweeps = 60;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (detail::off_diag_norm(w) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = w(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Unitary plane rotation R acting on (p, q):
        //   R[p][p] = c, R[p][q] = s e^{i phi}, R[q][p] = -s e^{-i phi}, R[q][q] = c
        // with phi = arg(A_pq), chosen so (R^dag A R)[p][q] = 0.
        const cplx eph = apq / mag;
        const cplx ephm = std::conj(eph);
        const double tau = (std::real(w(q, q)) - std::real(w(p, p))) / (2.0 * mag);
        if (!std::isfinite(tau)) continue;
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t i = 0; i < n; ++i) {  // A <- A R
          const cplx aip = w(i, p), aiq = w(i, q);
          w(i, p) = c * aip - s * ephm * aiq;
          w(i, q) = s * eph * aip + c * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {  // A <- R^dag A
          const cplx apj = w(p, j), aqj = w(q, j);
          w(p, j) = c * apj - s * eph * aqj;
          w(q, j) = s * ephm * apj + c * aqj;
        }
        w(p, q) = cplx(0.0, 0.0);
        w(q, p) = cplx(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {  // V <- V R
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * ephm * viq;
          v(i, q) = s * eph * vip + c * viq;
        }
      }
    }
  }
  if (sweep == max_sweeps && detail::off_diag_norm(w) > stop)
    throw std::runtime_error("eig_hermitian: Jacobi iteration did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::real(w(i, i)) < std::real(w(j, j));
  });

  SpectralDecomposition sd;
  sd.eigenvalues.resize(n);
  sd.eigenvectors = Operator(n);
  for (std::size_t k = 0; k < n; ++k) {
    sd.eigenvalues[k] = std::real(w(order[k], order[k]));
    for (std::size_t i = 0; i < n; ++i) sd.eigenvectors(i, k) = v(i, order[k]);
  }
  return sd;
}

/// U(omega) = exp(-i omega G) for Hermitian G, built from the spectral
/// decomposition of G.
inline Operator unitary_from_generator(const Operator& g, double omega) {
  if (!std::isfinite(omega)) throw std::invalid_argument("unitary_from_generator: omega must be finite");
  const SpectralDecomposition sd = eig_hermitian(g);
  const std::size_t n = g.dim();
  std::vector<cplx> phase(n);
  for (std::size_t k = 0; k < n; ++k)
    phase[k] = std::exp(cplx(0.0, -omega * sd.eigenvalues[k]));
  Operator u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k)
        s += sd.eigenvectors(i, k) * phase[k] * std::conj(sd.eigenvectors(j, k));
      u(i, j) = s;
    }
  return u;
}

/// Density-operator predicate: Hermitian, unit trace, spectrum bounded below
/// by the fixed negative floor that absorbs roundoff.
inline bool is_density(const Operator& rho) {
  if (!is_hermitian(rho, kHermitianTol)) return false;
  if (std::abs(trace(rho) - cplx(1.0, 0.0)) > kTraceOneTol) return false;
  const SpectralDecomposition sd = eig_hermitian(rho);
  return sd.eigenvalues.front() >= kDensityEigFloor;
}

}  // namespace jcest::hilbert
