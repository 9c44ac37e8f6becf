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

#ifndef LRR_GOLFING_HPP_
#define LRR_GOLFING_HPP_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lrr/bases.hpp"
#include "lrr/sampling.hpp"

namespace lrr {

enum class GolfingVariant { kSimple, kGeneral, kRefined };

std::string to_string(GolfingVariant v);
GolfingVariant golfing_variant_from_string(const std::string& s);

struct ScheduleRequest {
  GolfingVariant variant = GolfingVariant::kSimple;
  Eigen::Index n = 0;
  Eigen::Index r = 1;
  double nu = 1.0;
  double beta = 1.0;
  double alpha = 6.0;  // refined variant only
  double constant_scale = 1.0;
};

struct GolfingConfig {
  GolfingVariant variant = GolfingVariant::kSimple;
  Eigen::Index n = 0;
  Eigen::Index r = 1;
  double nu = 1.0;
  double beta = 1.0;
  double alpha = 6.0;
  double constant_scale = 1.0;
  int l = 1;
  int l_prime = 1;  // batches available; equals l unless refined
  bool l_prime_defaulted = false;  // refined: outside both regimes of the l' rule
  // Per step i = 1..l (stored 0-based).
  std::vector<double> c;
  std::vector<double> t;
  std::vector<double> kappa;  // already multiplied by constant_scale

  /// ceil(kappa_i r n).
  std::size_t batch_size(int step) const;
  void validate() const;
};

GolfingConfig schedule_params(const ScheduleRequest& req);

/// One drawn batch.
struct GolfingStep {
  int step = 0;               // 1-based step the batch was tried for
  std::size_t batch = 0;      // 0-based draw counter
  std::size_t batch_size = 0;
  double x_prev_norm = 0.0;   // ||X_{i-1}||_2
  double x_norm = 0.0;        // ||X_i||_2 if the batch were used
  double ptperp_increment = 0.0;  // ||P_T^perp R_j X_{i-1}||
  double mu = -1.0;           // mu(X_i), general variant only
  bool conditions_held = false;
  bool accepted = false;
};

struct Certificate {
  HermitianMatrix y;
  std::vector<GolfingStep> trace;
  std::vector<std::size_t> accepted_batches;  // f(1..), 0-based batch ids
  std::vector<std::size_t> used_indices;      // draws of accepted batches
  std::vector<std::size_t> all_indices;       // every draw
  std::size_t samples_consumed = 0;
  int steps_completed = 0;
  bool success = false;
  bool l_prime_defaulted = false;
  double final_x_norm = 0.0;
};

Certificate run_golfing(const HermitianMatrix& rho, const OperatorBasis& basis,
                        const GolfingConfig& cfg, std::uint64_t seed,
                        std::uint64_t trial = 0, double zero_tol = kDefaultZeroTol);

struct CertificateReport {
  double tangent_error = 0.0;     // ||P_T Y - sign rho||_2
  double complement_norm = 0.0;   // ||P_T^perp Y||
  double tangent_threshold = 0.0; // 1 / (2 n^2)
  bool tangent_ok = false;
  bool complement_ok = false;
  bool range_checked = false;
  double range_residual = 0.0;    // ||Y - projection onto span{w_a : a in omega}||_2
  bool range_ok = true;
  bool pass() const { return tangent_ok && complement_ok && range_ok; }
};

CertificateReport verify_certificate(const HermitianMatrix& rho, const HermitianMatrix& y,
                                     const OperatorBasis* basis = nullptr,
                                     const std::vector<std::size_t>* omega = nullptr,
                                     double zero_tol = kDefaultZeroTol);

/// Contraction and complement bookkeeping checked against the recorded trace.
struct BookkeepingReport {
  double final_x_norm = 0.0;
  double contraction_bound = 0.0;  // sqrt(r) prod c_i over accepted steps
  double complement_norm = 0.0;
  double complement_bound = 0.0;   // sum t_i ||X_{i-1}||_2
  bool ok() const {
    return final_x_norm <= contraction_bound && complement_norm <= complement_bound;
  }
};

BookkeepingReport check_bookkeeping(const HermitianMatrix& rho, const Certificate& cert,
                                    const GolfingConfig& cfg,
                                    double zero_tol = kDefaultZeroTol);

/// ||P_T R P_T - P_T|| on T, from the materialized (2nr - r^2)-dimensional
/// matrix.
double tangent_deviation(const TangentSpace& t, const SamplingOperator& r);

/// Same quantity by power iteration on the square of the restricted map.
double tangent_deviation_power(const TangentSpace& t, const SamplingOperator& r,
                               int max_iterations = 20000, double tol = 1e-13);

/// CSV rows (step, batch_size, x_norm, ptperp_increment, mu, accepted).
/// Trace rows; (seed, trial, batch) is the stream of each drawn batch.
void write_trace_csv(std::ostream& os, const Certificate& cert, std::uint64_t seed,
                     std::uint64_t trial = 0);

}  // namespace lrr

#endif  // LRR_GOLFING_HPP_
