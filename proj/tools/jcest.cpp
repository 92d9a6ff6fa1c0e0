// jcest: quantum estimation of the Jaynes-Cummings coupling Omega = g tau.
//
// Subcommands:
//   qfi       quantum Fisher information report for a point or a sweep
//   fi        same report (the classical FI columns are the point of interest)
//   estimate  Monte Carlo maximum-likelihood experiment against the CR bounds
//
// Exit codes: 0 success, 2 bad arguments, 3 runtime failure.

#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "jcest/estimation.hpp"
#include "jcest/format.hpp"
#include "jcest/inference.hpp"

namespace {

using jcest::io::fmt_g12;

struct SweepOptions {
  double theta = 0.0;
  int n = 0;
  double omega = 0.0;
  bool has_theta = false, has_n = false, has_omega = false;
  std::string sweep;  // "", "theta", "omega", "n"
  double min = 0.0, max = 0.0;
  int points = 0;
  bool has_min = false, has_max = false, has_points = false;
  std::string format = "csv";
  std::string out;
};

struct RowParam {
  double theta;
  int n;
  double omega;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

std::vector<RowParam> build_rows(const SweepOptions& o) {
  if (o.sweep.empty()) {
    require(o.has_theta && o.has_n && o.has_omega,
            "single-point mode needs --theta, --n and --omega (or use --sweep)");
    require(!o.has_min && !o.has_max && !o.has_points,
            "--min/--max/--points only apply together with --sweep");
    return {{o.theta, o.n, o.omega}};
  }

  std::vector<RowParam> rows;
  if (o.sweep == "theta") {
    require(o.has_n && o.has_omega, "--sweep theta needs fixed --n and --omega");
    require(!o.has_theta, "--theta conflicts with --sweep theta");
    const double lo = o.has_min ? o.min : 0.0;
    const double hi = o.has_max ? o.max : std::numbers::pi;
    const int pts = o.has_points ? o.points : 101;
    require(pts >= 2, "--points must be at least 2 for a sweep");
    require(hi > lo, "--max must exceed --min");
    for (int i = 0; i < pts; ++i) {
      const double t = (i == pts - 1) ? hi : lo + (hi - lo) * i / (pts - 1);
      rows.push_back({t, o.n, o.omega});
    }
  } else if (o.sweep == "omega") {
    require(o.has_n && o.has_theta, "--sweep omega needs fixed --theta and --n");
    require(!o.has_omega, "--omega conflicts with --sweep omega");
    const double lo = o.has_min ? o.min : 0.01;
    const double hi = o.has_max ? o.max : 2.0 * std::numbers::pi;
    const int pts = o.has_points ? o.points : 101;
    require(pts >= 2, "--points must be at least 2 for a sweep");
    require(hi > lo, "--max must exceed --min");
    for (int i = 0; i < pts; ++i) {
      const double w = (i == pts - 1) ? hi : lo + (hi - lo) * i / (pts - 1);
      rows.push_back({o.theta, o.n, w});
    }
  } else if (o.sweep == "n") {
    require(o.has_theta && o.has_omega, "--sweep n needs fixed --theta and --omega");
    require(!o.has_n, "--n conflicts with --sweep n");
    const double lo = o.has_min ? o.min : 0.0;
    const double hi = o.has_max ? o.max : 10.0;
    require(lo >= 0.0 && lo == static_cast<int>(lo) && hi == static_cast<int>(hi),
            "--min/--max must be non-negative integers for --sweep n");
    require(hi > lo, "--max must exceed --min");
    const int count = static_cast<int>(hi) - static_cast<int>(lo) + 1;
    require(!o.has_points || o.points == count,
            "--points must equal max - min + 1 for the integer sweep over n");
    for (int n = static_cast<int>(lo); n <= static_cast<int>(hi); ++n)
      rows.push_back({o.theta, n, o.omega});
  } else {
    require(false, "unknown --sweep axis '" + o.sweep + "' (expected theta, omega or n)");
  }
  return rows;
}

// Pure per-row computations run as a parallel map; assembly stays in sweep
// order, so output is independent of scheduling.
std::vector<jcest::estimation::QfiReport> compute_rows(const std::vector<RowParam>& rows) {
  std::vector<jcest::estimation::QfiReport> out(rows.size());
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, rows.size());
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < rows.size(); i += workers) {
      const jcest::jc::ProbeSpec spec(rows[i].theta, rows[i].n);
      out[i] = jcest::estimation::qfi_report(spec, rows[i].omega);
    }
  };
  if (workers <= 1) {
    work(0);
    return out;
  }
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    futures.push_back(std::async(std::launch::async, work, w));
  for (auto& f : futures) f.get();
  return out;
}

std::string render_sweep(const std::vector<RowParam>& rows,
                         const std::vector<jcest::estimation::QfiReport>& reports,
                         const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    os << "theta,n,omega,H_total,H_qubit,H_field,F_joint,F_qubit,F_field\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = reports[i];
      os << fmt_g12(rows[i].theta) << ',' << rows[i].n << ',' << fmt_g12(rows[i].omega) << ','
         << fmt_g12(r.h_total) << ',' << fmt_g12(r.h_qubit) << ',' << fmt_g12(r.h_field) << ','
         << fmt_g12(r.f_joint) << ',' << fmt_g12(r.f_qubit) << ',' << fmt_g12(r.f_field) << '\n';
    }
  } else {
    os << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = reports[i];
      os << "{\"theta\":" << fmt_g12(rows[i].theta) << ",\"n\":" << rows[i].n
         << ",\"omega\":" << fmt_g12(rows[i].omega) << ",\"H_total\":" << fmt_g12(r.h_total)
         << ",\"H_qubit\":" << fmt_g12(r.h_qubit) << ",\"H_field\":" << fmt_g12(r.h_field)
         << ",\"F_joint\":" << fmt_g12(r.f_joint) << ",\"F_qubit\":" << fmt_g12(r.f_qubit)
         << ",\"F_field\":" << fmt_g12(r.f_field) << (i + 1 < rows.size() ? "},\n" : "}\n");
    }
    os << "]\n";
  }
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file '" + out_path + "'");
  f << text;
  if (!f) throw std::runtime_error("failed writing output file '" + out_path + "'");
}

void run_sweep_command(const SweepOptions& o) {
  require(o.format == "csv" || o.format == "json",
          "unknown --format '" + o.format + "' (expected csv or json)");
  const std::vector<RowParam> rows = build_rows(o);
  emit(render_sweep(rows, compute_rows(rows), o.format), o.out);
}

struct EstimateOptions {
  double theta = 0.0;
  int n = 0;
  double omega_true = 0.0;
  std::uint64_t samples = 10000;
  std::uint32_t reps = 100;
  std::uint64_t seed = 42;
  std::string measurement = "joint";
  std::vector<double> interval;  // empty, or {lo, hi}
  std::string out;
};

std::string render_estimate(const EstimateOptions& o, const jcest::inference::McConfig& cfg,
                            const jcest::inference::EstimationReport& rep) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"theta\": " << fmt_g12(o.theta) << ",\n";
  os << "  \"n\": " << o.n << ",\n";
  os << "  \"omega_true\": " << fmt_g12(o.omega_true) << ",\n";
  os << "  \"measurement\": \"" << o.measurement << "\",\n";
  os << "  \"samples\": " << o.samples << ",\n";
  os << "  \"repetitions\": " << o.reps << ",\n";
  os << "  \"seed\": " << o.seed << ",\n";
  os << "  \"interval\": [" << fmt_g12(cfg.interval_lo) << ", " << fmt_g12(cfg.interval_hi)
     << "],\n";
  os << "  \"estimates\": [";
  for (std::size_t i = 0; i < rep.estimates.size(); ++i)
    os << (i ? ", " : "") << fmt_g12(rep.estimates[i]);
  os << "],\n";
  os << "  \"mean\": " << fmt_g12(rep.mean) << ",\n";
  os << "  \"bias\": " << fmt_g12(rep.bias) << ",\n";
  os << "  \"empirical_variance\": " << fmt_g12(rep.empirical_variance) << ",\n";
  os << "  \"cr_bound\": " << fmt_g12(rep.cr_bound) << ",\n";
  os << "  \"q_cr_bound\": " << fmt_g12(rep.q_cr_bound) << ",\n";
  os << "  \"efficiency\": " << fmt_g12(rep.efficiency) << ",\n";
  os << "  \"bound_violation\": " << (rep.bound_violation ? "true" : "false") << "\n";
  os << "}\n";
  return os.str();
}

void run_estimate_command(const EstimateOptions& o) {
  jcest::inference::McConfig cfg;
  cfg.spec = jcest::jc::ProbeSpec(o.theta, o.n);
  cfg.omega_true = o.omega_true;
  cfg.measurement = jcest::inference::measurement_from_string(o.measurement);
  cfg.samples_m = o.samples;
  cfg.repetitions = o.reps;
  cfg.seed = o.seed;
  if (o.interval.empty()) {
    // Default local window: 90% of one fringe, centered on omega_true.
    const double half = 0.45 * std::numbers::pi / std::sqrt(static_cast<double>(o.n) + 1.0);
    cfg.interval_lo = o.omega_true - half;
    cfg.interval_hi = o.omega_true + half;
  } else {
    require(o.interval.size() == 2, "--interval takes exactly two values: lo hi");
    cfg.interval_lo = o.interval[0];
    cfg.interval_hi = o.interval[1];
  }
  const jcest::inference::EstimationReport rep = jcest::inference::run_experiment(cfg);
  emit(render_estimate(o, cfg, rep), o.out);
}

void add_sweep_flags(CLI::App* cmd, SweepOptions& o) {
  cmd->add_option("--theta", o.theta, "qubit Bloch angle theta in radians, in [0, pi]");
  cmd->add_option("--n", o.n, "Fock index of the oscillator preparation");
  cmd->add_option("--omega", o.omega, "coupling parameter Omega = g tau in radians");
  cmd->add_option("--sweep", o.sweep, "axis to sweep: theta, omega or n");
  cmd->add_option("--min", o.min, "sweep lower bound (defaults: theta 0, omega 0.01, n 0)");
  cmd->add_option("--max", o.max, "sweep upper bound (defaults: theta pi, omega 2 pi, n 10)");
  cmd->add_option("--points", o.points, "number of sweep rows (default 101)");
  cmd->add_option("--format", o.format, "output format: csv (default) or json");
  cmd->add_option("--out", o.out, "write to this path instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum estimation of the Jaynes-Cummings coupling Omega"};
  app.require_subcommand(1);

  SweepOptions qfi_opts, fi_opts;
  EstimateOptions est_opts;

  CLI::App* qfi = app.add_subcommand("qfi", "quantum/classical Fisher information report");
  add_sweep_flags(qfi, qfi_opts);
  CLI::App* fi = app.add_subcommand("fi", "Fisher information of the model measurements");
  add_sweep_flags(fi, fi_opts);

  CLI::App* est = app.add_subcommand("estimate", "Monte Carlo Cramer-Rao experiment");
  est->add_option("--theta", est_opts.theta, "qubit Bloch angle theta in radians")->required();
  est->add_option("--n", est_opts.n, "Fock index of the oscillator preparation")->required();
  est->add_option("--omega-true", est_opts.omega_true, "true coupling Omega*")->required();
  est->add_option("--samples", est_opts.samples, "sample size M per repetition (default 10000)");
  est->add_option("--reps", est_opts.reps, "number of independent repetitions (default 100)");
  est->add_option("--seed", est_opts.seed, "RNG seed (default 42)");
  est->add_option("--measurement", est_opts.measurement,
                  "measurement: joint (default), qubit or field");
  est->add_option("--interval", est_opts.interval,
                  "MLE search interval: lo hi (default: 90% of one fringe around Omega*)")
      ->expected(2);
  est->add_option("--out", est_opts.out, "write to this path instead of stdout");

  // Presence flags drive the sweep-mode validation.
  auto note_presence = [](CLI::App* cmd, SweepOptions& o) {
    o.has_theta = cmd->count("--theta") > 0;
    o.has_n = cmd->count("--n") > 0;
    o.has_omega = cmd->count("--omega") > 0;
    o.has_min = cmd->count("--min") > 0;
    o.has_max = cmd->count("--max") > 0;
    o.has_points = cmd->count("--points") > 0;
  };

  try {
    app.parse(argc, argv);
    if (qfi->parsed()) {
      note_presence(qfi, qfi_opts);
      run_sweep_command(qfi_opts);
    } else if (fi->parsed()) {
      note_presence(fi, fi_opts);
      run_sweep_command(fi_opts);
    } else if (est->parsed()) {
      run_estimate_command(est_opts);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
