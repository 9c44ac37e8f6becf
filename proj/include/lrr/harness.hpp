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

#ifndef LRR_HARNESS_HPP_
#define LRR_HARNESS_HPP_

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lrr/concentration.hpp"
#include "lrr/config.hpp"
#include "lrr/ensembles.hpp"
#include "lrr/golfing.hpp"
#include "lrr/sampling.hpp"
#include "lrr/solver.hpp"

namespace lrr {

struct PhaseConfig {
  std::vector<Eigen::Index> n{16};
  std::vector<Eigen::Index> r{1};
  BasisKind basis = BasisKind::kPauli;
  /// m values per cell: explicit `m` if set, else ceil(gamma n r ln n) if
  /// gamma is set, else m_over_nr * n * r.
  std::vector<double> m_over_nr{2, 4, 6, 8};
  std::optional<double> gamma;
  std::vector<std::size_t> m;
  std::vector<SamplingMode> modes{SamplingMode::kIid};
  int trials = 25;
  std::uint64_t seed = 1;
  SpectrumKind spectrum = SpectrumKind::kFlat;
  SolverConfig solver;
  double success_threshold = 1e-4;
  unsigned workers = 0;

  static PhaseConfig from_config(const ConfigFile& cfg);
  void validate() const;
  std::vector<std::size_t> m_values(Eigen::Index n, Eigen::Index r) const;
};

struct CellResult {
  Eigen::Index n = 0;
  Eigen::Index r = 0;
  std::size_t m = 0;
  SamplingMode mode = SamplingMode::kIid;
  int trials = 0;
  int successes = 0;
  double mean_relative_error = 0.0;
  double mean_iterations = 0.0;
  double wall_time = 0.0;  // summed solver time, seconds
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // batch id of the sample-set streams; trial t uses (seed, t, stream)

  double rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
  /// Binomial standard error of rate().
  double sigma() const;
};

struct PhaseResult {
  std::vector<CellResult> cells;
  double wall_time = 0.0;
};

/// Stream ids. rho depends on (n, r, trial) only, so cells that differ in m
/// or sampling mode see the same matrices.
std::uint64_t rho_stream(Eigen::Index n, Eigen::Index r);
std::uint64_t omega_stream(Eigen::Index n, Eigen::Index r, std::size_t m, SamplingMode mode);

/// The matrix and sample set of one trial of a cell.
HermitianMatrix phase_trial_rho(const PhaseConfig& cfg, Eigen::Index n, Eigen::Index r,
                                int trial);

PhaseResult run_phase_diagram(const PhaseConfig& cfg);

/// Deterministic body; timing goes into '#' comment lines when requested.
void write_phase_csv(std::ostream& os, const PhaseResult& result, bool timing_comments);

struct OrderingCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Success rate non-decreasing in m per (n, r, mode), allowing a drop of
/// 2 sqrt(s_a^2 + s_b^2).
OrderingCheck check_monotone(const std::vector<CellResult>& cells);

/// Without-replacement rate >= i.i.d. rate - 2 sqrt(s_a^2 + s_b^2) per (n, r, m).
OrderingCheck check_mode_ordering(const std::vector<CellResult>& cells);

struct BoundsConfig {
  Eigen::Index n = 16;
  Eigen::Index r = 1;
  int trials = 500;
  std::uint64_t seed = 1;
  std::vector<BoundKind> kinds = all_bound_kinds();
  unsigned workers = 0;

  static BoundsConfig from_config(const ConfigFile& cfg);
};

/// Parameter points of the default sweep, including t values at the window
/// edges.
std::vector<TailScenario> default_sweep(const BoundsConfig& cfg);

std::vector<TailReport> run_bound_validation(const std::vector<TailScenario>& grid,
                                             unsigned workers = 0);
inline std::vector<TailReport> run_bound_validation(const BoundsConfig& cfg) {
  return run_bound_validation(default_sweep(cfg), cfg.workers);
}

struct GolfExperiment {
  GolfingVariant variant = GolfingVariant::kSimple;
  Eigen::Index n = 16;  // power of two; Pauli basis
  Eigen::Index r = 1;
  double beta = 1.0;
  double alpha = 6.0;
  double constant_scale = 1.0;
  std::uint64_t seed = 1;
  SpectrumKind spectrum = SpectrumKind::kFlat;

  static GolfExperiment from_config(const ConfigFile& cfg);
};

struct GolfRun {
  HermitianMatrix rho;
  double nu = 0.0;
  GolfingConfig schedule;
  Certificate certificate;
  CertificateReport report;
  BookkeepingReport bookkeeping;
};

/// One golfing run on a random rank-r matrix. rho uses stream
/// (seed, trial, rho_stream(n, r)), batch j uses (seed, trial, j).
GolfRun run_golf_experiment(const GolfExperiment& e, std::uint64_t trial = 0);

/// Opens `path` for writing or throws IOError.
std::ofstream open_output(const std::string& path);

/// Keys accepted by the config files of each experiment.
const std::set<std::string>& phase_config_keys();
const std::set<std::string>& bounds_config_keys();
const std::set<std::string>& golf_config_keys();

}  // namespace lrr

#endif  // LRR_HARNESS_HPP_
