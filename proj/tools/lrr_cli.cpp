// Copyright 2026 The lrr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lrr/bases.hpp"
#include "lrr/concentration.hpp"
#include "lrr/config.hpp"
#include "lrr/error.hpp"
#include "lrr/golfing.hpp"
#include "lrr/harness.hpp"
#include "lrr/io.hpp"
#include "lrr/solver.hpp"
#include "lrr/stabilizer.hpp"

namespace {

using namespace lrr;

constexpr int kExperimentFailure = 1;
constexpr int kUsageError = 2;

struct Globals {
  std::uint64_t seed = 1;
  std::string config;
  std::string out;
  bool assert_ok = false;
  bool seed_given = false;
};

// Config file (if any) with command-line values layered on top.
ConfigFile layered_config(const Globals& g) {
  ConfigFile cfg = g.config.empty() ? ConfigFile::parse("", "command line")
                                    : ConfigFile::load(g.config);
  if (g.seed_given) cfg.set("seed", std::to_string(g.seed));
  return cfg;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Writes via `body` to --out, or to stdout when no path was given.
template <typename F>
void emit(const Globals& g, F&& body) {
  if (g.out.empty()) {
    body(std::cout);
  } else {
    std::ofstream os = open_output(g.out);
    body(os);
    if (!os) throw IOError("write to '" + g.out + "' failed");
  }
}

OperatorBasis basis_by_name(const std::string& kind, int k, int n, const std::string& file) {
  const BasisKind bk = basis_kind_from_string(kind);
  switch (bk) {
    case BasisKind::kPauli:
      return OperatorBasis::pauli(k);
    case BasisKind::kHermitianStandard:
      return OperatorBasis::hermitian_standard(n);
    case BasisKind::kStandard:
      return OperatorBasis::standard(n);
    case BasisKind::kCustom:
      if (file.empty()) throw InvalidInput("custom basis needs --file");
      return load_basis(file);
  }
  throw InvalidInput("unknown basis kind");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank matrix recovery from few coefficients in an operator basis"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--config", g.config, "key=value config file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "output path (stdout if omitted)");
  app.add_flag("--assert", g.assert_ok, "exit 1 when the experiment's checks fail");

  // recover
  auto* rec = app.add_subcommand("recover", "solve one problem file");
  std::string problem_file, custom_basis_file, truth_file;
  SolverConfig solver_cfg;
  double rec_threshold = 1e-4;
  rec->add_option("problem", problem_file, "problem file")->required()->check(CLI::ExistingFile);
  rec->add_option("--basis-file", custom_basis_file, "basis file for custom-basis problems")
      ->check(CLI::ExistingFile);
  rec->add_option("--truth", truth_file, "matrix file to compare against")
      ->check(CLI::ExistingFile);
  rec->add_option("--max-iterations", solver_cfg.max_iterations, "iteration cap")->capture_default_str();
  rec->add_option("--penalty", solver_cfg.penalty, "ADMM penalty")->capture_default_str();
  rec->add_option("--eps-primal", solver_cfg.eps_primal, "primal residual tolerance")->capture_default_str();
  rec->add_option("--eps-dual", solver_cfg.eps_dual, "dual residual tolerance")->capture_default_str();
  rec->add_flag("--adaptive-penalty", solver_cfg.adaptive_penalty, "rebalance the penalty while iterating");
  rec->add_option("--threshold", rec_threshold, "relative error counted as recovered");

  // phase
  auto* phase = app.add_subcommand("phase", "phase diagram over (n, r, m)");
  std::vector<long long> ph_n, ph_r, ph_m;
  std::vector<double> ph_ratio;
  std::vector<std::string> ph_modes;
  std::string ph_basis, ph_spectrum;
  double ph_gamma = 0.0;
  int ph_trials = 0, ph_workers = -1;
  phase->add_option("--n", ph_n, "matrix dimensions")->delimiter(',');
  phase->add_option("--r", ph_r, "ranks")->delimiter(',');
  phase->add_option("--m", ph_m, "explicit sample counts")->delimiter(',');
  phase->add_option("--m-over-nr", ph_ratio, "sample counts as multiples of n r")->delimiter(',');
  phase->add_option("--gamma", ph_gamma, "use m = ceil(gamma n r ln n)");
  phase->add_option("--modes", ph_modes, "iid, without-replacement")->delimiter(',');
  phase->add_option("--basis", ph_basis, "pauli or hermitian-standard");
  phase->add_option("--spectrum", ph_spectrum, "flat or random");
  phase->add_option("--trials", ph_trials, "trials per cell");
  phase->add_option("--workers", ph_workers, "worker threads (0 = hardware)");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Monte Carlo validation of the tail bounds");
  std::vector<std::string> bd_kinds;
  long long bd_n = 0, bd_r = 0;
  int bd_trials = 0, bd_workers = -1;
  bounds->add_option("--kinds", bd_kinds, "bound kinds to sweep (default all)")->delimiter(',');
  bounds->add_option("--n", bd_n, "matrix dimension");
  bounds->add_option("--r", bd_r, "rank");
  bounds->add_option("--trials", bd_trials, "Monte Carlo trials per point");
  bounds->add_option("--workers", bd_workers, "worker threads (0 = hardware)");

  // golf
  auto* golf = app.add_subcommand("golf", "golfing certificate trace");
  std::string gf_variant, gf_spectrum;
  int gf_k = 0;
  long long gf_r = 0;
  double gf_beta = 0.0, gf_alpha = 0.0, gf_scale = 0.0;
  golf->add_option("--variant", gf_variant, "simple, general or refined");
  golf->add_option("--k", gf_k, "n = 2^k, Pauli basis");
  golf->add_option("--r", gf_r, "rank");
  golf->add_option("--beta", gf_beta, "failure exponent");
  golf->add_option("--alpha", gf_alpha, "refined variant oversampling");
  golf->add_option("--constant-scale", gf_scale, "multiplier on every kappa_i");
  golf->add_option("--spectrum", gf_spectrum, "flat or random");

  // stabdemo
  auto* stab = app.add_subcommand("stabdemo", "stabilizer lower-bound demos");
  int st_k = 4, st_trials = 500, st_draws = 1;
  long long st_omega = -1;
  double st_eps = 1.0;
  stab->add_option("--k", st_k, "qubits, n = 2^k")->check(CLI::Range(1, 6));
  stab->add_option("--omega-size", st_omega, "|Omega| for the ambiguous-pair search");
  stab->add_option("--draws", st_draws, "number of random Omega to search")->check(CLI::PositiveNumber);
  stab->add_option("--epsilon", st_eps, "sample deficit in m = n log2 n / (1 + epsilon)")->check(CLI::PositiveNumber);
  stab->add_option("--trials", st_trials, "trials of the probabilistic bound")->check(CLI::PositiveNumber);

  // coherence
  auto* coh = app.add_subcommand("coherence", "coherence report for one matrix");
  std::string co_rho, co_basis = "pauli", co_file, co_spectrum = "flat";
  int co_k = 4, co_n = 16, co_r = 1;
  coh->add_option("--rho", co_rho, "matrix file (random rank-r matrix if omitted)")
      ->check(CLI::ExistingFile);
  coh->add_option("--basis", co_basis, "pauli, hermitian-standard or custom");
  coh->add_option("--k", co_k, "qubits for the Pauli basis");
  coh->add_option("--n", co_n, "dimension for the hermitian-standard basis");
  coh->add_option("--r", co_r, "rank of the random matrix");
  coh->add_option("--file", co_file, "custom basis file");
  coh->add_option("--spectrum", co_spectrum, "flat or random");

  // basis-check
  auto* bc = app.add_subcommand("basis-check", "orthonormality and completeness deviations");
  std::string bc_kind = "pauli", bc_file;
  int bc_k = 3, bc_n = 8;
  bool bc_exhaustive = false;
  double bc_tol = 1e-10;
  bc->add_option("--kind", bc_kind, "pauli, hermitian-standard or custom");
  bc->add_option("--k", bc_k, "qubits for the Pauli basis");
  bc->add_option("--n", bc_n, "dimension for the hermitian-standard basis");
  bc->add_option("--file", bc_file, "custom basis file")->check(CLI::ExistingFile);
  bc->add_flag("--exhaustive", bc_exhaustive, "check every pair instead of a random sample");
  bc->add_option("--tol", bc_tol, "pass threshold for both deviations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  g.seed_given = app.count("--seed") > 0;

  try {
    if (*rec) {
      const OperatorBasis* custom = nullptr;
      std::optional<OperatorBasis> cb;
      if (!custom_basis_file.empty()) {
        cb = load_basis(custom_basis_file);
        custom = &*cb;
      }
      const RecoveryProblem problem = load_problem(problem_file, custom);
      const RecoveryResult res = recover(problem, solver_cfg);
      std::cerr << "converged=" << res.converged << " iterations=" << res.iterations
                << " primal_residual=" << res.primal_residual
                << " dual_residual=" << res.dual_residual
                << " constraint_residual=" << res.constraint_residual << '\n';
      bool ok = res.converged;
      if (!truth_file.empty()) {
        const HermitianMatrix truth(load_matrix(truth_file));
        const double err = diagnose(res.sigma, truth).relative_error;
        std::cerr << "relative_error=" << err << '\n';
        ok = ok && err <= rec_threshold;
      }
      emit(g, [&](std::ostream& os) { write_matrix(os, res.sigma.matrix()); });
      return g.assert_ok && !ok ? kExperimentFailure : 0;
    }

    if (*phase) {
      ConfigFile cfg = layered_config(g);
      if (!ph_n.empty()) cfg.set("n", join(ph_n));
      if (!ph_r.empty()) cfg.set("r", join(ph_r));
      if (!ph_m.empty()) cfg.set("m", join(ph_m));
      if (!ph_ratio.empty()) cfg.set("m_over_nr", join(ph_ratio));
      if (phase->count("--gamma")) cfg.set("gamma", std::to_string(ph_gamma));
      if (!ph_modes.empty()) cfg.set("modes", join(ph_modes));
      if (!ph_basis.empty()) cfg.set("basis", ph_basis);
      if (!ph_spectrum.empty()) cfg.set("spectrum", ph_spectrum);
      if (phase->count("--trials")) cfg.set("trials", std::to_string(ph_trials));
      if (phase->count("--workers")) cfg.set("workers", std::to_string(ph_workers));
      const PhaseConfig pc = PhaseConfig::from_config(cfg);
      const PhaseResult result = run_phase_diagram(pc);
      emit(g, [&](std::ostream& os) { write_phase_csv(os, result, true); });
      const OrderingCheck mono = check_monotone(result.cells);
      const OrderingCheck modes = check_mode_ordering(result.cells);
      for (const auto& f : mono.failures) std::cerr << "monotonicity: " << f << '\n';
      for (const auto& f : modes.failures) std::cerr << "mode ordering: " << f << '\n';
      return g.assert_ok && !(mono.ok && modes.ok) ? kExperimentFailure : 0;
    }

    if (*bounds) {
      ConfigFile cfg = layered_config(g);
      if (!bd_kinds.empty()) cfg.set("kinds", join(bd_kinds));
      if (bounds->count("--n")) cfg.set("n", std::to_string(bd_n));
      if (bounds->count("--r")) cfg.set("r", std::to_string(bd_r));
      if (bounds->count("--trials")) cfg.set("trials", std::to_string(bd_trials));
      if (bounds->count("--workers")) cfg.set("workers", std::to_string(bd_workers));
      const BoundsConfig bcfg = BoundsConfig::from_config(cfg);
      const auto reports = run_bound_validation(bcfg);
      emit(g, [&](std::ostream& os) { write_tail_csv(os, reports); });
      int violated = 0;
      for (const auto& rep : reports) violated += rep.verdict == Verdict::kViolated;
      std::cerr << reports.size() << " points, " << violated << " violated\n";
      return g.assert_ok && violated ? kExperimentFailure : 0;
    }

    if (*golf) {
      ConfigFile cfg = layered_config(g);
      if (!gf_variant.empty()) cfg.set("variant", gf_variant);
      if (golf->count("--k")) cfg.set("n", std::to_string(1LL << gf_k));
      if (golf->count("--r")) cfg.set("r", std::to_string(gf_r));
      if (golf->count("--beta")) cfg.set("beta", std::to_string(gf_beta));
      if (golf->count("--alpha")) cfg.set("alpha", std::to_string(gf_alpha));
      if (golf->count("--constant-scale")) cfg.set("constant_scale", std::to_string(gf_scale));
      if (!gf_spectrum.empty()) cfg.set("spectrum", gf_spectrum);
      const GolfExperiment e = GolfExperiment::from_config(cfg);
      const GolfRun run = run_golf_experiment(e);
      emit(g, [&](std::ostream& os) { write_trace_csv(os, run.certificate, e.seed); });
      std::cerr << "success=" << run.certificate.success
                << " steps=" << run.certificate.steps_completed
                << " samples=" << run.certificate.samples_consumed
                << " nu=" << run.nu
                << " tangent_error=" << run.report.tangent_error
                << " complement_norm=" << run.report.complement_norm
                << " bookkeeping=" << (run.bookkeeping.ok() ? "ok" : "broken") << '\n';
      const bool ok = run.certificate.success && run.report.pass() && run.bookkeeping.ok();
      return g.assert_ok && !ok ? kExperimentFailure : 0;
    }

    if (*stab) {
      const std::size_t n = std::size_t(1) << st_k;
      const std::size_t m =
          st_omega >= 0 ? static_cast<std::size_t>(st_omega) : (n - 2) * st_k - 1;
      bool ok = true;
      double worst = 0.0;
      for (int d = 0; d < st_draws; ++d) {
        const SampleSet omega = draw_omega(static_cast<Eigen::Index>(n), m, SamplingMode::kIid,
                                           StreamId{g.seed, static_cast<std::uint64_t>(d), 1});
        const auto pair = find_ambiguous_pair(st_k, omega.indices);
        if (!pair) {
          std::cout << "draw " << d << ": no ambiguous pair\n";
          ok = false;
          continue;
        }
        const double overlap = std::abs(hs_inner(pair->p1.matrix(), pair->p2.matrix()));
        worst = std::max(worst, pair->max_residual);
        std::cout << "draw " << d << ": x=" << pair->x << " chi1=" << pair->chi1.y
                  << " chi2=" << pair->chi2.y << " |omega cap G_x|=" << pair->intersection
                  << " tr(P1 P2)=" << overlap
                  << " matched coefficient residual=" << pair->max_residual << '\n';
        ok = ok && pair->max_residual <= 1e-10 && overlap <= 1e-10;
      }
      const auto m_lb = static_cast<std::size_t>(
          std::floor(static_cast<double>(n) * st_k / (1.0 + st_eps)));
      const LowerBoundReport lb = lower_bound_trial(st_k, m_lb, st_eps, st_trials, g.seed);
      std::cout << "max matched coefficient residual=" << worst << '\n'
                << "lower bound: m=" << lb.m << " epsilon=" << lb.epsilon
                << " frequency=" << lb.frequency << " printed_p_f=" << lb.printed_bound
                << " 3sigma=" << lb.half_width
                << (lb.consistent() ? " consistent" : " INCONSISTENT") << '\n';
      ok = ok && lb.consistent();
      return g.assert_ok && !ok ? kExperimentFailure : 0;
    }

    if (*coh) {
      OperatorBasis basis = basis_by_name(co_basis, co_k, co_n, co_file);
      ComplexMatrix rho;
      if (!co_rho.empty()) {
        rho = load_matrix(co_rho);
      } else {
        CounterRng rng(StreamId{g.seed, 0, rho_stream(basis.dim(), co_r)});
        rho = random_low_rank(basis.dim(), co_r, spectrum_kind_from_string(co_spectrum), rng)
                  .matrix();
      }
      if (rho.rows() != basis.dim() || rho.cols() != basis.dim())
        throw InvalidInput("matrix dimension does not match the basis");
      const bool herm = (rho - rho.adjoint()).norm() <= 1e-12 * std::max(1.0, rho.norm());
      const CoherenceReport rep = herm && basis.hermitian()
                                      ? coherence(HermitianMatrix(rho), basis)
                                      : coherence_nonhermitian(rho, basis);
      std::cout << "nu=" << rep.nu << " route=" << to_string(rep.route) << " rank=" << rep.rank
                << " fourier_term=" << rep.fourier_term << " pt_term=" << rep.pt_term
                << " sign_term=" << rep.sign_term << '\n';
      return 0;
    }

    if (*bc) {
      const OperatorBasis basis = basis_by_name(bc_kind, bc_k, bc_n, bc_file);
      const BasisReport rep = verify_basis(basis, bc_exhaustive, g.seed);
      std::cout << "basis=" << to_string(basis.kind()) << " n=" << basis.dim()
                << " pairs_checked=" << rep.pairs_checked
                << " exhaustive=" << rep.exhaustive
                << "\nmax orthonormality deviation=" << rep.orthonormality_deviation
                << "\nmax completeness deviation=" << rep.completeness_deviation << '\n';
      return g.assert_ok && !rep.ok(bc_tol) ? kExperimentFailure : 0;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExperimentFailure;
  }
  return 0;
}
