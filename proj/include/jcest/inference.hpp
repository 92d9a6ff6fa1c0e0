#pragma once

// Monte Carlo check of the Cramer-Rao machinery: draw measurement outcomes
// at a true coupling Omega*, form maximum-likelihood estimates on a local
// search interval, and compare the empirical estimator variance against
// 1/(M F) and 1/(M H).
//
// The likelihood in Omega is quasi-periodic, so estimation is local by
// construction: the search interval must contain Omega* and be no wider
// than pi / sqrt(n+1) (one fringe of the fastest Rabi oscillation).

#include <cstdint>
#include <limits>

#include "jcest/estimation.hpp"

namespace jcest::inference {

using jc::OutcomeDistribution;
using jc::ProbeSpec;

enum class Measurement { joint, qubit, field };

inline const char* measurement_name(Measurement m) {
  switch (m) {
    case Measurement::joint: return "joint";
    case Measurement::qubit: return "qubit";
    case Measurement::field: return "field";
  }
  return "?";
}

inline Measurement measurement_from_string(const std::string& s) {
  if (s == "joint") return Measurement::joint;
  if (s == "qubit") return Measurement::qubit;
  if (s == "field") return Measurement::field;
  throw std::invalid_argument("unknown measurement '" + s + "' (expected joint, qubit or field)");
}

inline OutcomeDistribution distribution_for(const ProbeSpec& spec, double omega, Measurement m) {
  switch (m) {
    case Measurement::joint: return jc::joint_distribution(spec, omega);
    case Measurement::qubit: return jc::qubit_distribution(spec, omega);
    case Measurement::field: return jc::field_distribution(spec, omega);
  }
  throw std::invalid_argument("distribution_for: unknown measurement");
}

struct McConfig {
  ProbeSpec spec;
  double omega_true = 0.0;
  Measurement measurement = Measurement::joint;
  std::uint64_t samples_m = 0;    // sample size M per repetition
  std::uint32_t repetitions = 0;  // independent experiments
  std::uint64_t seed = 0;
  double interval_lo = 0.0;       // search interval for the MLE, contains omega_true
  double interval_hi = 0.0;

  void validate() const {
    ProbeSpec revalidated(spec.theta, spec.n_photons, spec.truncation);  // re-runs the invariants
    (void)revalidated;
    if (!std::isfinite(omega_true)) throw std::invalid_argument("McConfig: omega_true must be finite");
    if (samples_m == 0) throw std::invalid_argument("McConfig: samples_M must be positive");
    if (repetitions == 0) throw std::invalid_argument("McConfig: repetitions must be positive");
    if (!std::isfinite(interval_lo) || !std::isfinite(interval_hi) || interval_hi <= interval_lo)
      throw std::invalid_argument("McConfig: search interval must satisfy hi > lo");
    if (omega_true <= interval_lo || omega_true >= interval_hi)
      throw std::invalid_argument("McConfig: omega_true must lie strictly inside the search interval");
  }

  // The variance claims of run_experiment additionally need the interval to
  // stay within one fringe of the fastest Rabi oscillation, otherwise the
  // quasi-periodic likelihood makes the MLE non-identifiable. Raw mle() calls
  // may use wider intervals deliberately (e.g. to study the degeneracy).
  //
  // The cap does not remove every ambiguity. At theta = 0 or pi the outcome
  // probabilities depend on Omega only through cos(Omega sqrt(n+1)) or
  // cos(Omega sqrt(n)), giving the likelihood exact reflection symmetries;
  // for theta = 0, n = 3 every Omega and pi - Omega are indistinguishable.
  // A window that straddles such a mirror point makes the MLE bimodal and
  // the empirical variance meaningless even though the width cap is met.
  // Keep the window inside one monotonic branch when quoting variances
  // against the CR bound.
  void validate_local_window() const {
    const double max_width =
        std::numbers::pi / std::sqrt(static_cast<double>(spec.n_photons) + 1.0);
    if (interval_hi - interval_lo > max_width + 1e-12)
      throw std::invalid_argument(
          "McConfig: search interval wider than one fringe pi/sqrt(n+1); the local MLE is not "
          "identifiable on it");
  }
};

namespace detail {

// splitmix64: cheap, splittable, platform-independent. Per-repetition streams
// start from decorrelated states derived from (seed, repetition index).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct SplitMix {
  std::uint64_t state;
  SplitMix(std::uint64_t seed, std::uint32_t repetition)
      : state(mix64(seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(repetition) + 1))) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Streams the draws of one repetition into visit(outcome_index).
template <typename Visit>
void for_each_draw(const McConfig& cfg, std::uint32_t repetition, Visit&& visit) {
  const OutcomeDistribution dist = distribution_for(cfg.spec, cfg.omega_true, cfg.measurement);
  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    acc += dist.probs[k];
    cdf[k] = acc;
  }
  SplitMix rng(cfg.seed, repetition);
  for (std::uint64_t i = 0; i < cfg.samples_m; ++i) {
    const double u = rng.uniform01();
    std::size_t idx = dist.size() - 1;
    for (std::size_t k = 0; k < cdf.size(); ++k)
      if (u < cdf[k]) {
        idx = k;
        break;
      }
    visit(idx);
  }
}

inline double log_likelihood(const McConfig& cfg, const std::vector<std::uint64_t>& counts,
                             double omega) {
  const OutcomeDistribution d = distribution_for(cfg.spec, omega, cfg.measurement);
  double s = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    if (d.probs[k] <= 0.0) return -std::numeric_limits<double>::infinity();
    s += static_cast<double>(counts[k]) * std::log(d.probs[k]);
  }
  return s;
}

inline double mle_from_counts(const McConfig& cfg, const std::vector<std::uint64_t>& counts) {
  const double lo = cfg.interval_lo, hi = cfg.interval_hi;
  const double mid = 0.5 * (lo + hi);
  const int npts = 1000;
  const double step = (hi - lo) / (npts - 1);

  double best_x = lo, best_ll = -std::numeric_limits<double>::infinity();
  double min_ll = std::numeric_limits<double>::infinity(), max_ll = best_ll;
  for (int i = 0; i < npts; ++i) {
    const double x = (i == npts - 1) ? hi : lo + i * step;
    const double v = log_likelihood(cfg, counts, x);
    min_ll = std::min(min_ll, v);
    max_ll = std::max(max_ll, v);
    if (i == 0) {
      best_ll = v;
      continue;
    }
    if (v > best_ll) {
      best_ll = v;
      best_x = x;
    } else if (v == best_ll && std::abs(x - mid) < std::abs(best_x - mid)) {
      best_x = x;  // exact tie: prefer the point nearer the midpoint
    }
  }
  if (!std::isfinite(best_ll))
    throw std::domain_error(
        "mle: an observed outcome has zero probability everywhere on the search interval");
  if (max_ll - min_ll <= 1e-12 * (1.0 + std::abs(max_ll)))
    throw std::domain_error("mle: likelihood is flat on the search interval (no information)");

  // Golden-section refinement inside the bracket around the best grid point.
  double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = log_likelihood(cfg, counts, c), fd = log_likelihood(cfg, counts, d);
  while (b - a > 1e-8) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = log_likelihood(cfg, counts, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = log_likelihood(cfg, counts, d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// M i.i.d. draws from the configured distribution at omega_true, as outcome
/// labels. Deterministic given (seed, repetition); repetitions own disjoint
/// RNG streams.
inline std::vector<std::string> sample_outcomes(const McConfig& cfg, std::uint32_t repetition = 0) {
  cfg.validate();
  const OutcomeDistribution dist = distribution_for(cfg.spec, cfg.omega_true, cfg.measurement);
  std::vector<std::string> out;
  out.reserve(cfg.samples_m);
  detail::for_each_draw(cfg, repetition,
                        [&](std::size_t idx) { out.push_back(dist.labels[idx]); });
  return out;
}

/// Maximum-likelihood estimate of Omega from observed outcome labels:
/// dense 1000-point scan of the search interval followed by golden-section
/// refinement to 1e-8. Ties are broken toward the interval midpoint.
inline double mle(const McConfig& cfg, const std::vector<std::string>& outcomes) {
  cfg.validate();
  if (outcomes.empty()) throw std::invalid_argument("mle: outcomes must be nonempty");
  const OutcomeDistribution dist = distribution_for(cfg.spec, cfg.omega_true, cfg.measurement);
  std::vector<std::uint64_t> counts(dist.size(), 0);
  for (const std::string& label : outcomes) {
    bool found = false;
    for (std::size_t k = 0; k < dist.size(); ++k)
      if (dist.labels[k] == label) {
        ++counts[k];
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("mle: unknown outcome label '" + label + "'");
  }
  return detail::mle_from_counts(cfg, counts);
}

struct EstimationReport {
  std::vector<double> estimates;  // one MLE per repetition
  double mean = 0.0;
  double bias = 0.0;                // mean - omega_true
  double empirical_variance = 0.0;  // around the sample mean, denominator R - 1
  double cr_bound = 0.0;            // 1 / (M F(Omega*))
  double q_cr_bound = 0.0;          // 1 / (M H)
  double efficiency = 0.0;          // cr_bound / empirical_variance
  // True if empirical_variance < q_cr_bound (1 - 3/sqrt(repetitions)), i.e.
  // the run is super-efficient beyond plausible statistical fluctuation.
  // Reported rather than fatal so the offending numbers stay inspectable.
  bool bound_violation = false;
};

/// Runs the full Monte Carlo experiment. Throws if the model carries no
/// Fisher information at omega_true; the no-superefficiency sanity bound
/// empirical_variance >= q_cr_bound (1 - 3/sqrt(repetitions)) is evaluated
/// into bound_violation.
inline EstimationReport run_experiment(const McConfig& cfg) {
  cfg.validate();
  cfg.validate_local_window();
  if (cfg.repetitions < 2)
    throw std::invalid_argument("run_experiment: need at least 2 repetitions for a variance");

  const OutcomeDistribution dist = distribution_for(cfg.spec, cfg.omega_true, cfg.measurement);
  const double f = estimation::classical_fi(dist);
  if (f <= kZeroFisherTol)
    throw std::domain_error(
        "run_experiment: the measurement carries no Fisher information at omega_true");
  const double h =
      estimation::qfi_pure_unitary(jc::probe_state(cfg.spec), jc::build_generator(cfg.spec));
  const double m = static_cast<double>(cfg.samples_m);

  EstimationReport report;
  report.cr_bound = 1.0 / (m * f);
  report.q_cr_bound = 1.0 / (m * h);
  report.estimates.reserve(cfg.repetitions);
  for (std::uint32_t rep = 0; rep < cfg.repetitions; ++rep) {
    std::vector<std::uint64_t> counts(dist.size(), 0);
    detail::for_each_draw(cfg, rep, [&](std::size_t idx) { ++counts[idx]; });
    report.estimates.push_back(detail::mle_from_counts(cfg, counts));
  }

  double sum = 0.0;
  for (double e : report.estimates) sum += e;
  report.mean = sum / static_cast<double>(report.estimates.size());
  report.bias = report.mean - cfg.omega_true;
  double ss = 0.0;
  for (double e : report.estimates) ss += (e - report.mean) * (e - report.mean);
  report.empirical_variance = ss / static_cast<double>(report.estimates.size() - 1);
  report.efficiency = report.cr_bound / report.empirical_variance;

  const double floor =
      report.q_cr_bound * (1.0 - 3.0 / std::sqrt(static_cast<double>(cfg.repetitions)));
  report.bound_violation = report.empirical_variance < floor;
  return report;
}

}  // namespace jcest::inference
