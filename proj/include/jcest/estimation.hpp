#pragma once

// Fisher information machinery: classical FI of outcome distributions, the
// quantum Fisher information of pure unitary families and of (possibly
// rank-deficient) density operators, and the symmetric logarithmic
// derivative. Parameter derivatives of the model states are available in
// closed form through drho_analytic.

#include "jcest/jc.hpp"

namespace jcest::estimation {

using hilbert::cplx;
using hilbert::Operator;
using hilbert::StateVector;

enum class Subsystem { global, qubit, field };

/// Classical Fisher information sum_k (dp_k)^2 / p_k. Outcomes with
/// p_k <= 1e-12 are skipped; on the model's structural zeros the matching
/// derivative vanishes identically, so nothing is lost there.
inline double classical_fi(const jc::OutcomeDistribution& dist) {
  double f = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k)
    if (dist.probs[k] > kProbFloor) f += dist.dprobs[k] * dist.dprobs[k] / dist.probs[k];
  return f;
}

/// QFI of the pure family exp(-i Omega G)|psi>: H = 4 Var_psi(G). It is
/// independent of Omega, so it is evaluated on the unevolved state.
inline double qfi_pure_unitary(const StateVector& psi, const Operator& g) {
  if (psi.dim() != g.dim()) throw std::invalid_argument("qfi_pure_unitary: dimension mismatch");
  if (std::abs(psi.norm_sq() - 1.0) > kStateNormTol)
    throw std::invalid_argument("qfi_pure_unitary: state is not normalized");
  if (hilbert::hermiticity_defect(g) > kEigInputTol)
    throw std::invalid_argument("qfi_pure_unitary: generator is not Hermitian");
  const StateVector gp = hilbert::apply(g, psi);
  const double g2 = std::real(hilbert::inner(gp, gp));
  const double g1 = std::real(hilbert::inner(psi, gp));
  return 4.0 * (g2 - g1 * g1);
}

namespace detail {

struct EigenBasis {
  std::vector<double> lam;  // eigenvalues of rho, ascending
  Operator v;               // eigenvectors (columns)
  Operator m;               // drho in the eigenbasis, V^dag drho V
};

inline EigenBasis eigenbasis_of(const Operator& rho, const Operator& drho) {
  hilbert::check_same_dim(rho, drho, "qfi_spectral");
  if (hilbert::hermiticity_defect(rho) > kEigInputTol)
    throw std::invalid_argument("qfi_spectral: rho is not Hermitian");
  if (hilbert::hermiticity_defect(drho) > kEigInputTol)
    throw std::invalid_argument("qfi_spectral: drho is not Hermitian");
  if (std::abs(hilbert::trace(rho) - cplx(1.0, 0.0)) > kTraceOneTol)
    throw std::invalid_argument("qfi_spectral: rho does not have unit trace");
  if (std::abs(hilbert::trace(drho)) > kEigInputTol)
    throw std::invalid_argument("qfi_spectral: drho is not traceless");
  EigenBasis eb;
  hilbert::SpectralDecomposition sd = hilbert::eig_hermitian(rho);
  if (sd.eigenvalues.front() < kDensityEigFloor)
    throw std::invalid_argument("qfi_spectral: rho has a negative eigenvalue beyond roundoff");
  eb.lam = std::move(sd.eigenvalues);
  eb.v = std::move(sd.eigenvectors);
  eb.m = hilbert::adjoint(eb.v) * drho * eb.v;
  return eb;
}

}  // namespace detail

/// QFI from the spectral representation,
///   H = 2 sum_{lambda_k + lambda_l > eps} |<phi_k|drho|phi_l>|^2 / (lambda_k + lambda_l).
/// Pairs below the cutoff live in the kernel of rho; the matrix elements of
/// drho between two kernel vectors vanish for any curve through rho, and the
/// implementation verifies that no excluded element exceeds 1e-9, so the
/// cutoff discards no information.
inline double qfi_spectral(const Operator& rho, const Operator& drho) {
  const detail::EigenBasis eb = detail::eigenbasis_of(rho, drho);
  const std::size_t n = eb.lam.size();
  double h = 0.0;
  double leak = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const double denom = eb.lam[k] + eb.lam[l];
      const double w2 = std::norm(eb.m(k, l));
      if (denom > kSpectralPairFloor)
        h += 2.0 * w2 / denom;
      else
        leak = std::max(leak, std::sqrt(w2));
    }
  if (leak > kSupportLeakTol)
    throw std::runtime_error("qfi_spectral: drho has weight on excluded eigenvalue pairs");
  return h;
}

/// Symmetric logarithmic derivative: L = sum 2 <phi_k|drho|phi_l> /
/// (lambda_k + lambda_l) |phi_k><phi_l| over the retained pairs, zero on the
/// excluded ones. Satisfies drho = (L rho + rho L) / 2 on the support.
inline Operator sld(const Operator& rho, const Operator& drho) {
  const detail::EigenBasis eb = detail::eigenbasis_of(rho, drho);
  const std::size_t n = eb.lam.size();
  Operator lt(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const double denom = eb.lam[k] + eb.lam[l];
      if (denom > kSpectralPairFloor) lt(k, l) = 2.0 * eb.m(k, l) / denom;
    }
  return eb.v * lt * hilbert::adjoint(eb.v);
}

/// Analytic dOmega-derivative of the model state: -i[G, rho] for the global
/// pure state, a closed form for the reduced qubit, and the diagonal
/// derivative of the Fock populations for the oscillator. The field case
/// differentiates the number-dephased family diag(rho_f(Omega)); the estimation
/// contract treats the oscillator through its number populations, whose
/// eigenbasis does not move with Omega.
inline Operator drho_analytic(const jc::ProbeSpec& spec, double omega, Subsystem which) {
  const auto a = jc::detail::angles(spec, omega);
  const double c2 = a.c * a.c, s2 = a.s * a.s, cs = a.c * a.s;
  const double c1 = std::cos(0.5 * a.x1), s1 = std::sin(0.5 * a.x1);
  const double c0 = std::cos(0.5 * a.x0), s0 = std::sin(0.5 * a.x0);

  switch (which) {
    case Subsystem::global: {
      const Operator g = jc::build_generator(spec);
      const Operator rho = hilbert::outer(jc::evolve(spec, omega));
      const Operator grho = g * rho;
      return cplx(0.0, -1.0) * (grho - hilbert::adjoint(grho));
    }
    case Subsystem::qubit: {
      Operator d(2);
      const double dee = -c2 * a.k1 * std::sin(a.x1) + s2 * a.k0 * std::sin(a.x0);
      d(0, 0) = dee;
      d(1, 1) = -dee;
      d(0, 1) = -cs * (a.k0 * s0 * c1 + a.k1 * c0 * s1);
      d(1, 0) = d(0, 1);
      return d;
    }
    case Subsystem::field: {
      const std::size_t n = static_cast<std::size_t>(spec.n_photons);
      Operator d(spec.truncation);
      d(n, n) = -c2 * a.k1 * std::sin(a.x1) - s2 * a.k0 * std::sin(a.x0);
      d(n + 1, n + 1) = c2 * a.k1 * std::sin(a.x1);
      if (n >= 1) d(n - 1, n - 1) = s2 * a.k0 * std::sin(a.x0);
      return d;
    }
  }
  throw std::invalid_argument("drho_analytic: unknown subsystem");
}

/// Quantum and classical Fisher information of the probe at one parameter
/// point, for the full state and both reductions.
struct QfiReport {
  double h_total;  // QFI of the pure composite state
  double h_qubit;  // QFI of the reduced qubit
  double h_field;  // QFI of the number-dephased reduced oscillator
  double f_joint;  // classical FI, joint qubit+Fock measurement
  double f_qubit;  // classical FI, qubit energy measurement
  double f_field;  // classical FI, Fock population measurement
};

/// The field QFI refers to the family diag(rho_f(Omega)): its eigenbasis is
/// the Fock basis at every Omega, and the Fock measurement saturates it, so
/// h_field = f_field up to roundoff. The exact partial trace additionally
/// carries imaginary number coherences (see reduced_field); their information
/// content is not accessible to photon counting and is excluded here.
inline QfiReport qfi_report(const jc::ProbeSpec& spec, double omega) {
  QfiReport r;
  const Operator rho = hilbert::outer(jc::evolve(spec, omega));
  r.h_total = qfi_spectral(rho, drho_analytic(spec, omega, Subsystem::global));
  r.h_qubit = qfi_spectral(jc::reduced_qubit(spec, omega), drho_analytic(spec, omega, Subsystem::qubit));
  r.h_field = qfi_spectral(hilbert::diagonal_part(jc::reduced_field(spec, omega)),
                           drho_analytic(spec, omega, Subsystem::field));
  r.f_joint = classical_fi(jc::joint_distribution(spec, omega));
  r.f_qubit = classical_fi(jc::qubit_distribution(spec, omega));
  r.f_field = classical_fi(jc::field_distribution(spec, omega));
  return r;
}

}  // namespace jcest::estimation
