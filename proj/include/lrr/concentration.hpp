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

#ifndef LRR_CONCENTRATION_HPP_
#define LRR_CONCENTRATION_HPP_

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "lrr/bases.hpp"
#include "lrr/ensembles.hpp"

namespace lrr {

enum class BoundKind {
  kOpBernstein,
  kOpBernsteinPoisson,
  kVectorBernstein,
  kMatrixMartingale,
  kAdev,
  kPbotFourier,
  kPbotGeneral,
  kMuPropagation,
  kDimensionFree,
};

std::string to_string(BoundKind kind);
BoundKind bound_kind_from_string(const std::string& s);
const std::vector<BoundKind>& all_bound_kinds();

/// Parameter names by kind (t is always required):
///   op-bernstein, matrix-martingale: n, V, c  (c = max_i c_i for the martingale)
///   op-bernstein-poisson:            n, V, c
///   vector-bernstein:                V, max_x  (max_i ||X_i||_2)
///   adev:                            n, r, nu, kappa
///   pbot-fourier:                    n, r, nu, kappa, F2  (||F||_2)
///   pbot-general:                    n, r, nu, kappa, f
///   mu-propagation:                  n, nu, kappa, mu  (mu(F))
///   dimension-free:                  nu, kappa
struct TailBoundQuery {
  BoundKind kind = BoundKind::kAdev;
  std::map<std::string, double> params;

  double get(const std::string& name) const;
  TailBoundQuery& set(const std::string& name, double value) {
    params[name] = value;
    return *this;
  }
};

/// The printed bound, unclamped. Throws OutOfWindow when t lies outside the
/// kind's validity window and InvalidInput for missing or non-positive
/// parameters.
double eval_tail_bound(const TailBoundQuery& q);

enum class Verdict { kRespected, kViolated, kVacuous };
std::string to_string(Verdict v);

struct TailScenario {
  BoundKind kind = BoundKind::kAdev;
  Eigen::Index n = 16;
  Eigen::Index r = 1;
  /// Basis for the lemma scenarios; pbot-general always uses the
  /// Hermitian standard basis.
  BasisKind basis = BasisKind::kPauli;
  double kappa = 8.0;     // lemma scenarios: m = ceil(kappa n r)
  std::size_t m = 16;     // summand count for the constructed ensembles
  double t = 0.5;
  int trials = 500;
  std::uint64_t seed = 1;
  SpectrumKind spectrum = SpectrumKind::kFlat;
};

struct TailReport {
  TailScenario scenario;
  TailBoundQuery query;
  double analytic = 0.0;
  double empirical = 0.0;
  int trials = 0;
  double half_width = 0.0;  // 3 sigma of the binomial estimate
  Verdict verdict = Verdict::kRespected;
};

Verdict classify(double analytic, double empirical, double half_width);

/// Draws `trials` independent instances of the random quantity controlled by
/// the kind, on streams (seed, trial, .), and compares its tail at t with the
/// analytic bound.
TailReport monte_carlo_tail(const TailScenario& s, unsigned workers = 0);

/// The per-trial statistic, exposed for tests.
double tail_statistic(const TailScenario& s, int trial);

/// Header and one row per report.
void write_tail_csv(std::ostream& os, const std::vector<TailReport>& reports);

}  // namespace lrr

#endif  // LRR_CONCENTRATION_HPP_
