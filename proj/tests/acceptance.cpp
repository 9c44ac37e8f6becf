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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lrr/bases.hpp"
#include "lrr/concentration.hpp"
#include "lrr/ensembles.hpp"
#include "lrr/golfing.hpp"
#include "lrr/harness.hpp"
#include "lrr/matcore.hpp"
#include "lrr/solver.hpp"
#include "lrr/stabilizer.hpp"

namespace {

using namespace lrr;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') out += line + "\n";
  return out;
}

Outcome basis_validity() {
  double ortho = 0.0, complete = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const BasisReport rep = verify_basis(OperatorBasis::pauli(k), true);
    ortho = std::max(ortho, rep.orthonormality_deviation);
    complete = std::max(complete, rep.completeness_deviation);
  }
  for (int n = 1; n <= 32; ++n) {
    const BasisReport rep = verify_basis(OperatorBasis::hermitian_standard(n), true);
    ortho = std::max(ortho, rep.orthonormality_deviation);
    complete = std::max(complete, rep.completeness_deviation);
  }
  return {ortho <= 1e-10 && complete <= 1e-10,
          fmt("max orthonormality deviation %.3g, max completeness deviation %.3g", ortho,
              complete)};
}

Outcome fourier_optimality() {
  double worst = 0.0;
  for (int k = 1; k <= 5; ++k) {
    const OperatorBasis b = OperatorBasis::pauli(k);
    const double inv_n = 1.0 / static_cast<double>(b.dim());
    double max_sq = 0.0;
    for (std::size_t a = 0; a < b.size(); ++a) {
      const double op = operator_norm(b.dense(a));
      max_sq = std::max(max_sq, op * op);
    }
    worst = std::max({worst, std::abs(max_sq - inv_n), std::abs(b.fourier_bound() - inv_n)});
  }
  return {worst <= 1e-12, fmt("max |max_a ||w_a||^2 - 1/n| = %.3g over k = 1..5", worst)};
}

Outcome holder_chain() {
  const OperatorBasis b = OperatorBasis::pauli(4);
  double worst_slack = -INFINITY;
  for (int r = 1; r <= 3; ++r) {
    const double bound = 2.0 * r / 16.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
      CounterRng rng(StreamId{3, t, static_cast<std::uint64_t>(r)});
      const TangentSpace ts(random_low_rank(16, r, SpectrumKind::kRandom, rng));
      for (std::size_t a = 0; a < b.size(); ++a)
        worst_slack = std::max(worst_slack, ts.project(b.dense(a)).squaredNorm() - bound);
    }
  }
  return {worst_slack <= 1e-10,
          fmt("max ||P_T w_a||_2^2 - 2r/n = %.3g over 150 matrices", worst_slack)};
}

Outcome desk_recovery() {
  PhaseConfig cfg;
  cfg.n = {32};
  cfg.r = {2};
  cfg.m_over_nr = {2, 4, 6, 8};
  cfg.trials = 25;
  cfg.seed = 1;
  const PhaseResult res = run_phase_diagram(cfg);
  double at6 = 0.0;
  std::string rates;
  for (const auto& c : res.cells) {
    if (c.m == 6u * 32u * 2u) at6 = c.rate();
    rates += fmt("%s%zu:%d/%d", rates.empty() ? "" : " ", c.m, c.successes, c.trials);
  }
  const OrderingCheck mono = check_monotone(res.cells);
  return {at6 >= 0.9 && mono.ok,
          fmt("success by m [%s], rate at 6nr %.2f, monotone %s", rates.c_str(), at6,
              mono.ok ? "yes" : "no")};
}

Outcome certificate_sufficiency() {
  GolfExperiment e;
  e.n = 16;
  e.r = 1;
  e.constant_scale = 0.3;
  e.seed = 7;
  const OperatorBasis b = OperatorBasis::pauli(4);
  int qualifying = 0, recovered = 0;
  std::uint64_t trial = 0;
  double coverage = 0.0;
  for (; qualifying < 50 && trial < 500; ++trial) {
    const GolfRun run = run_golf_experiment(e, trial);
    if (!run.certificate.success) continue;
    SampleSet omega;
    omega.n = 16;
    omega.indices = run.certificate.all_indices;
    if (tangent_deviation(TangentSpace(run.rho), SamplingOperator(omega, b)) > 0.5) continue;
    ++qualifying;
    coverage += static_cast<double>(deduplicate(omega.indices).size()) / 256.0;
    const RecoveryResult res = recover(RecoveryProblem::from_matrix(run.rho, b, omega.indices));
    recovered += diagnose(res.sigma, run.rho).relative_error <= 1e-4;
  }
  return {qualifying == 50 && recovered == qualifying,
          fmt("%d/%d qualifying instances recovered (%llu golfing runs, mean label coverage "
              "%.3f)",
              recovered, qualifying, static_cast<unsigned long long>(trial),
              qualifying ? coverage / qualifying : 0.0)};
}

Outcome golfing_bookkeeping() {
  int successes = 0, violations = 0;
  const std::pair<GolfingVariant, double> setups[] = {{GolfingVariant::kSimple, 0.3},
                                                      {GolfingVariant::kGeneral, 0.2},
                                                      {GolfingVariant::kRefined, 0.2}};
  std::string per;
  for (const auto& [variant, scale] : setups) {
    GolfExperiment e;
    e.variant = variant;
    e.constant_scale = scale;
    e.seed = 13;
    int ok = 0;
    for (std::uint64_t t = 0; t < 20; ++t) {
      const GolfRun run = run_golf_experiment(e, t);
      if (!run.certificate.success) continue;
      ++ok;
      if (!run.bookkeeping.ok()) ++violations;
    }
    successes += ok;
    per += fmt("%s%s %d/20", per.empty() ? "" : ", ", to_string(variant).c_str(), ok);
  }
  return {successes > 0 && violations == 0,
          fmt("successful traces [%s], bookkeeping violations %d", per.c_str(), violations)};
}

Outcome concentration() {
  BoundsConfig cfg;
  cfg.n = 16;
  cfg.r = 1;
  cfg.trials = 500;
  const std::vector<TailReport> reps = run_bound_validation(cfg);
  int violated = 0, vacuous = 0;
  std::string which;
  for (const auto& r : reps) {
    if (r.verdict == Verdict::kVacuous) ++vacuous;
    if (r.verdict == Verdict::kViolated) {
      ++violated;
      which += " " + to_string(r.query.kind) + fmt("@t=%.3g", r.query.params.at("t"));
    }
  }
  return {violated == 0, fmt("%zu points, %d violated%s, %d vacuous", reps.size(), violated,
                             which.c_str(), vacuous)};
}

Outcome stabilizer_lower_bound() {
  const int k = 4;
  int sound = 0;
  double worst = 0.0;
  for (std::uint64_t d = 0; d < 200; ++d) {
    const SampleSet omega = draw_omega(16, 55, SamplingMode::kIid, StreamId{17, d, 1});
    const auto pair = find_ambiguous_pair(k, omega.indices);
    if (!pair) continue;
    const double overlap = std::abs(hs_inner(pair->p1.matrix(), pair->p2.matrix()));
    const bool rank_one = numerical_rank(pair->p1.matrix()) == 1 &&
                          numerical_rank(pair->p2.matrix()) == 1;
    worst = std::max(worst, pair->max_residual);
    sound += pair->max_residual <= 1e-10 && overlap <= 1e-10 && rank_one;
  }
  const LowerBoundReport lb = lower_bound_trial(k, 32, 1.0, 500, 17);
  return {sound == 200 && lb.consistent(),
          fmt("%d/200 ambiguous pairs (max residual %.3g); ambiguity frequency %.3f vs printed "
              "%.3f - 3sigma %.3f",
              sound, worst, lb.frequency, lb.printed_bound, lb.half_width)};
}

Outcome tilde_lemma() {
  double worst = 0.0;
  int rank_ok = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    CounterRng rng(StreamId{19, t, 0});
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(t % 8);
    const Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    const ComplexMatrix s = gaussian_complex(n, rank, rng) * gaussian_complex(rank, n, rng);
    const HermitianMatrix e = tilde_embed(s);
    worst = std::max(worst, std::abs(operator_norm(e.matrix()) - operator_norm(s) / std::sqrt(2.0)));
    worst = std::max(worst, std::abs(nuclear_norm(e.matrix()) - std::sqrt(2.0) * nuclear_norm(s)));
    const ComplexMatrix sign_diff =
        matrix_sign(e).matrix() - std::sqrt(2.0) * tilde_embed(polar_unitary_part(s)).matrix();
    worst = std::max(worst, sign_diff.cwiseAbs().maxCoeff());
    rank_ok += numerical_rank(e.matrix()) == 2 * numerical_rank(s) && numerical_rank(s) == rank;
  }
  return {worst <= 1e-10 && rank_ok == 200,
          fmt("max deviation %.3g, rank doubling %d/200", worst, rank_ok)};
}

Outcome mode_ordering() {
  PhaseConfig cfg;
  cfg.n = {16};
  cfg.r = {1};
  cfg.m_over_nr = {2, 4};
  cfg.modes = {SamplingMode::kIid, SamplingMode::kWithoutReplacement};
  cfg.trials = 200;
  cfg.seed = 23;
  const PhaseResult res = run_phase_diagram(cfg);
  const OrderingCheck chk = check_mode_ordering(res.cells);
  std::string rates;
  for (const auto& c : res.cells)
    rates += fmt("%s%s m=%zu %d/%d", rates.empty() ? "" : ", ", to_string(c.mode).c_str(), c.m,
                 c.successes, c.trials);
  return {chk.ok, rates};
}

Outcome determinism() {
  PhaseConfig phase;
  phase.n = {8};
  phase.r = {1};
  phase.m_over_nr = {2, 4};
  phase.modes = {SamplingMode::kIid, SamplingMode::kWithoutReplacement};
  phase.trials = 5;
  phase.seed = 29;
  std::ostringstream p1, p2;
  write_phase_csv(p1, run_phase_diagram(phase), true);
  write_phase_csv(p2, run_phase_diagram(phase), true);

  BoundsConfig bounds;
  bounds.trials = 100;
  bounds.seed = 29;
  bounds.kinds = {BoundKind::kAdev, BoundKind::kOpBernstein, BoundKind::kVectorBernstein};
  std::ostringstream b1, b2;
  write_tail_csv(b1, run_bound_validation(bounds));
  write_tail_csv(b2, run_bound_validation(bounds));

  GolfExperiment golf;
  golf.constant_scale = 0.3;
  golf.seed = 29;
  std::ostringstream g1, g2;
  write_trace_csv(g1, run_golf_experiment(golf, 0).certificate, golf.seed);
  write_trace_csv(g2, run_golf_experiment(golf, 0).certificate, golf.seed);

  const bool same_phase = strip_comments(p1.str()) == strip_comments(p2.str());
  const bool same_bounds = strip_comments(b1.str()) == strip_comments(b2.str());
  const bool same_golf = strip_comments(g1.str()) == strip_comments(g2.str());
  return {same_phase && same_bounds && same_golf,
          fmt("phase %s, bounds %s, golf trace %s", same_phase ? "identical" : "DIFFERENT",
              same_bounds ? "identical" : "DIFFERENT", same_golf ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 basis validity", basis_validity},
      {"AC2 fourier-type optimality", fourier_optimality},
      {"AC3 holder chain", holder_chain},
      {"AC4 desk-scale recovery", desk_recovery},
      {"AC5 certificate sufficiency", certificate_sufficiency},
      {"AC6 golfing bookkeeping", golfing_bookkeeping},
      {"AC7 concentration validation", concentration},
      {"AC8 stabilizer lower bound", stabilizer_lower_bound},
      {"AC9 tilde lemma", tilde_lemma},
      {"AC10 sampling-mode ordering", mode_ordering},
      {"AC11 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", name.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !out.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
