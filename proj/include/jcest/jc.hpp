#pragma once

// Jaynes-Cummings probe model on a truncated qubit (x) oscillator space.
//
// The estimation parameter is the accumulated coupling angle Omega = g * tau.
// Dynamics are generated by the resonant interaction-picture coupling
//   G = (sigma_+ a + sigma_- a^dag) / 2,
// which closes on two-dimensional ladders, so evolution from the probe
//   |psi_0> = cos(theta/2) |e,n> + sin(theta/2) |g,n>
// is evaluated in closed form. With x1 = Omega sqrt(n+1), x0 = Omega sqrt(n):
//   |psi> = cos(theta/2) [cos(x1/2) |e,n> - i sin(x1/2) |g,n+1>]
//         + sin(theta/2) [cos(x0/2) |g,n> - i sin(x0/2) |e,n-1>]
// (the |e,n-1> branch is absent for n = 0).

#include <cmath>
#include <numbers>
#include <string>

#include "jcest/eig.hpp"

namespace jcest::jc {

using hilbert::cplx;
using hilbert::Operator;
using hilbert::StateVector;

struct ProbeSpec {
  double theta = 0.0;        // Bloch polar angle of the qubit, in [0, pi]
  int n_photons = 0;         // Fock index of the oscillator preparation
  std::size_t truncation = 2;  // oscillator dimension d, must satisfy d >= n + 2

  ProbeSpec() = default;

  ProbeSpec(double theta_in, int n_in, std::size_t truncation_in = 0) {
    if (!std::isfinite(theta_in))
      throw std::invalid_argument("ProbeSpec: theta must be finite");
    if (theta_in < 0.0 || theta_in > std::numbers::pi)
      throw std::invalid_argument("ProbeSpec: theta must lie in [0, pi]");
    if (n_in < 0) throw std::invalid_argument("ProbeSpec: photon number must be non-negative");
    const std::size_t min_trunc = static_cast<std::size_t>(n_in) + 2;
    if (truncation_in == 0) truncation_in = min_trunc;
    if (truncation_in < min_trunc)
      throw std::invalid_argument("ProbeSpec: truncation must be at least n + 2 = " +
                                  std::to_string(min_trunc));
    theta = theta_in;
    n_photons = n_in;
    truncation = truncation_in;
  }

  std::size_t dim() const { return 2 * truncation; }
};

namespace detail {

// Rabi phases and probe weights shared by the closed-form expressions.
struct Angles {
  double c, s;     // cos(theta/2), sin(theta/2)
  double x1, x0;   // Omega sqrt(n+1), Omega sqrt(n)
  double k1, k0;   // d(x1)/dOmega / 2, d(x0)/dOmega / 2
};

inline Angles angles(const ProbeSpec& spec, double omega) {
  if (!std::isfinite(omega)) throw std::invalid_argument("omega must be finite");
  Angles a;
  a.c = std::cos(0.5 * spec.theta);
  a.s = std::sin(0.5 * spec.theta);
  const double r1 = std::sqrt(static_cast<double>(spec.n_photons) + 1.0);
  const double r0 = std::sqrt(static_cast<double>(spec.n_photons));
  a.x1 = omega * r1;
  a.x0 = omega * r0;
  a.k1 = 0.5 * r1;
  a.k0 = 0.5 * r0;
  return a;
}

}  // namespace detail

/// G = (sigma_+ a + sigma_- a^dag) / 2 on the truncated composite space.
inline Operator build_generator(const ProbeSpec& spec) {
  const std::size_t d = spec.truncation;
  Operator g(2 * d);
  for (std::size_t m = 0; m + 1 < d; ++m) {
    // <g, m+1| G |e, m> = sqrt(m+1) / 2; qubit index 0 = |e>, 1 = |g>.
    const double v = 0.5 * std::sqrt(static_cast<double>(m) + 1.0);
    g(d + m + 1, m) = v;
    g(m, d + m + 1) = v;
  }
  return g;
}

inline StateVector probe_state(const ProbeSpec& spec) {
  const std::size_t d = spec.truncation;
  const std::size_t n = static_cast<std::size_t>(spec.n_photons);
  StateVector psi(2 * d);
  psi.amps[n] = std::cos(0.5 * spec.theta);
  psi.amps[d + n] = std::sin(0.5 * spec.theta);
  return psi;
}

/// Closed-form |psi(Omega)> = exp(-i Omega G) |psi_0>.
inline StateVector evolve(const ProbeSpec& spec, double omega) {
  const auto a = detail::angles(spec, omega);
  const std::size_t d = spec.truncation;
  const std::size_t n = static_cast<std::size_t>(spec.n_photons);
  StateVector psi(2 * d);
  psi.amps[n] = a.c * std::cos(0.5 * a.x1);                    // |e, n>
  psi.amps[d + n + 1] = cplx(0.0, -a.c * std::sin(0.5 * a.x1));  // |g, n+1>
  psi.amps[d + n] = a.s * std::cos(0.5 * a.x0);                // |g, n>
  if (n >= 1)
    psi.amps[n - 1] = cplx(0.0, -a.s * std::sin(0.5 * a.x0));  // |e, n-1>
  return psi;
}

/// Reduced qubit state in the {|e>, |g>} basis.
inline Operator reduced_qubit(const ProbeSpec& spec, double omega) {
  const auto a = detail::angles(spec, omega);
  const double c1 = std::cos(0.5 * a.x1), s1 = std::sin(0.5 * a.x1);
  const double c0 = std::cos(0.5 * a.x0), s0 = std::sin(0.5 * a.x0);
  Operator rho(2);
  rho(0, 0) = a.c * a.c * c1 * c1 + a.s * a.s * s0 * s0;
  rho(1, 1) = a.c * a.c * s1 * s1 + a.s * a.s * c0 * c0;
  rho(0, 1) = a.c * a.s * c0 * c1;  // (1/2) sin(theta) cos(x0/2) cos(x1/2)
  rho(1, 0) = rho(0, 1);
  return rho;
}

/// Reduced oscillator state. Populations sit on {n-1, n, n+1}; the partial
/// trace also leaves interference between Fock components that ride on the
/// same qubit branch, so the state carries (n, n-1) and (n+1, n) coherences.
/// Photon counting is blind to those coherences; the field Fisher-information
/// path therefore works with diag(rho_f), whose eigenbasis stays pinned to
/// the Fock basis as Omega varies.
inline Operator reduced_field(const ProbeSpec& spec, double omega) {
  const auto a = detail::angles(spec, omega);
  const std::size_t d = spec.truncation;
  const std::size_t n = static_cast<std::size_t>(spec.n_photons);
  const double c1 = std::cos(0.5 * a.x1), s1 = std::sin(0.5 * a.x1);
  const double c0 = std::cos(0.5 * a.x0), s0 = std::sin(0.5 * a.x0);
  Operator rho(d);
  rho(n, n) = a.c * a.c * c1 * c1 + a.s * a.s * c0 * c0;
  rho(n + 1, n + 1) = a.c * a.c * s1 * s1;
  rho(n + 1, n) = cplx(0.0, -a.c * a.s * s1 * c0);
  rho(n, n + 1) = std::conj(rho(n + 1, n));
  if (n >= 1) {
    rho(n - 1, n - 1) = a.s * a.s * s0 * s0;
    rho(n, n - 1) = cplx(0.0, a.c * a.s * c1 * s0);
    rho(n - 1, n) = std::conj(rho(n, n - 1));
  }
  return rho;
}

struct OutcomeDistribution {
  std::vector<std::string> labels;
  std::vector<double> probs;   // non-negative, sums to 1
  std::vector<double> dprobs;  // d(probs)/dOmega, sums to 0

  std::size_t size() const { return probs.size(); }

  /// Validates and normalizes raw values: sizes must agree, probabilities in
  /// [-1e-14, 0) are clamped to zero, anything more negative is an error, and
  /// the sum rules must hold to 1e-12.
  static OutcomeDistribution make(std::vector<std::string> labels, std::vector<double> probs,
                                  std::vector<double> dprobs) {
    if (labels.empty() || labels.size() != probs.size() || labels.size() != dprobs.size())
      throw std::invalid_argument("OutcomeDistribution: label/prob/dprob sizes disagree");
    double psum = 0.0, dsum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (!std::isfinite(probs[i]) || !std::isfinite(dprobs[i]))
        throw std::invalid_argument("OutcomeDistribution: non-finite entry");
      if (probs[i] < 0.0) {
        if (probs[i] < kProbClamp)
          throw std::invalid_argument("OutcomeDistribution: negative probability beyond roundoff");
        probs[i] = 0.0;
      }
      psum += probs[i];
      dsum += dprobs[i];
    }
    if (std::abs(psum - 1.0) > kProbSumTol)
      throw std::invalid_argument("OutcomeDistribution: probabilities do not sum to 1");
    if (std::abs(dsum) > kProbSumTol)
      throw std::invalid_argument("OutcomeDistribution: probability derivatives do not sum to 0");
    OutcomeDistribution dist;
    dist.labels = std::move(labels);
    dist.probs = std::move(probs);
    dist.dprobs = std::move(dprobs);
    return dist;
  }
};

/// Joint qubit + Fock projective measurement of the evolved probe. Outcome
/// order: (e,n), (g,n+1), (g,n), (e,n-1); the last is absent for n = 0.
inline OutcomeDistribution joint_distribution(const ProbeSpec& spec, double omega) {
  const auto a = detail::angles(spec, omega);
  const int n = spec.n_photons;
  const double c2 = a.c * a.c, s2 = a.s * a.s;
  const double c1 = std::cos(0.5 * a.x1), s1 = std::sin(0.5 * a.x1);
  const double c0 = std::cos(0.5 * a.x0), s0 = std::sin(0.5 * a.x0);

  std::vector<std::string> labels = {"e," + std::to_string(n), "g," + std::to_string(n + 1),
                                     "g," + std::to_string(n)};
  std::vector<double> probs = {c2 * c1 * c1, c2 * s1 * s1, s2 * c0 * c0};
  std::vector<double> dprobs = {-c2 * a.k1 * std::sin(a.x1), c2 * a.k1 * std::sin(a.x1),
                                -s2 * a.k0 * std::sin(a.x0)};
  if (n >= 1) {
    labels.push_back("e," + std::to_string(n - 1));
    probs.push_back(s2 * s0 * s0);
    dprobs.push_back(s2 * a.k0 * std::sin(a.x0));
  }
  return OutcomeDistribution::make(std::move(labels), std::move(probs), std::move(dprobs));
}

/// Qubit-only projective measurement in the energy basis {e, g}.
inline OutcomeDistribution qubit_distribution(const ProbeSpec& spec, double omega) {
  const auto a = detail::angles(spec, omega);
  const double c2 = a.c * a.c, s2 = a.s * a.s;
  const double c1 = std::cos(0.5 * a.x1), s1 = std::sin(0.5 * a.x1);
  const double c0 = std::cos(0.5 * a.x0), s0 = std::sin(0.5 * a.x0);
  const double dee = -c2 * a.k1 * std::sin(a.x1) + s2 * a.k0 * std::sin(a.x0);
  return OutcomeDistribution::make(
      {"e", "g"},
      {c2 * c1 * c1 + s2 * s0 * s0, c2 * s1 * s1 + s2 * c0 * c0},
      {dee, -dee});
}

/// Fock-population measurement of the oscillator; outcomes are the photon
/// numbers {n-1, n, n+1} reachable from the probe (n-1 absent for n = 0).
inline OutcomeDistribution field_distribution(const ProbeSpec& spec, double omega) {
  const auto a = detail::angles(spec, omega);
  const int n = spec.n_photons;
  const double c2 = a.c * a.c, s2 = a.s * a.s;
  const double c1 = std::cos(0.5 * a.x1), s1 = std::sin(0.5 * a.x1);
  const double c0 = std::cos(0.5 * a.x0), s0 = std::sin(0.5 * a.x0);

  std::vector<std::string> labels;
  std::vector<double> probs;
  std::vector<double> dprobs;
  if (n >= 1) {
    labels.push_back(std::to_string(n - 1));
    probs.push_back(s2 * s0 * s0);
    dprobs.push_back(s2 * a.k0 * std::sin(a.x0));
  }
  labels.push_back(std::to_string(n));
  probs.push_back(c2 * c1 * c1 + s2 * c0 * c0);
  dprobs.push_back(-c2 * a.k1 * std::sin(a.x1) - s2 * a.k0 * std::sin(a.x0));
  labels.push_back(std::to_string(n + 1));
  probs.push_back(c2 * s1 * s1);
  dprobs.push_back(c2 * a.k1 * std::sin(a.x1));
  return OutcomeDistribution::make(std::move(labels), std::move(probs), std::move(dprobs));
}

/// Excitation number E = a^dag a + sigma_+ sigma_- on the composite space.
inline Operator excitation_operator(std::size_t truncation) {
  if (truncation == 0) throw std::invalid_argument("excitation_operator: dimension must be positive");
  Operator e(2 * truncation);
  for (std::size_t m = 0; m < truncation; ++m) {
    e(m, m) = static_cast<double>(m) + 1.0;             // |e, m>
    e(truncation + m, truncation + m) = static_cast<double>(m);  // |g, m>
  }
  return e;
}

/// <psi_0| E |psi_0>; E commutes with G, so this is conserved under evolution.
inline double excitation_expectation(const ProbeSpec& spec) {
  const StateVector psi = probe_state(spec);
  const Operator e = excitation_operator(spec.truncation);
  return std::real(hilbert::inner(psi, hilbert::apply(e, psi)));
}

}  // namespace jcest::jc
