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

#ifndef LRR_SOLVER_HPP_
#define LRR_SOLVER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lrr/bases.hpp"
#include "lrr/sampling.hpp"

namespace lrr {

/// Equality constraints (w_a, sigma) = c_a over a deduplicated index set.
class RecoveryProblem {
 public:
  /// Coefficients of rho on the distinct indices of omega.
  static RecoveryProblem from_matrix(const HermitianMatrix& rho,
                                     const OperatorBasis& basis,
                                     const std::vector<std::size_t>& omega);

  /// Sampled (index, coefficient) pairs. Duplicates must agree to 1e-9.
  static RecoveryProblem from_samples(const OperatorBasis& basis,
                                      const std::vector<std::size_t>& indices,
                                      const std::vector<double>& coefficients);

  const OperatorBasis& basis() const { return basis_; }
  Eigen::Index dim() const { return basis_.dim(); }
  const std::vector<std::size_t>& indices() const { return indices_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  std::size_t size() const { return indices_.size(); }

 private:
  RecoveryProblem(OperatorBasis basis, std::vector<std::size_t> indices,
                  std::vector<double> coefficients);

  OperatorBasis basis_;
  std::vector<std::size_t> indices_;
  std::vector<double> coefficients_;
};

struct SolverConfig {
  int max_iterations = 20000;
  double penalty = 1.0;
  double eps_primal = 1e-9;
  double eps_dual = 1e-9;
  double zero_tol = kDefaultZeroTol;
  /// Rescale the penalty when primal and dual residuals drift apart by more
  /// than a factor of 10.
  bool adaptive_penalty = false;

  void validate() const;
};

struct RecoveryDiagnostics {
  double relative_error = 0.0;    // ||sigma - rho||_2 / ||rho||_2
  double delta_t_norm = 0.0;      // ||P_T Delta||_2
  double delta_tperp_norm = 0.0;  // ||P_T^perp Delta||_2
};

struct RecoveryResult {
  HermitianMatrix sigma;
  bool converged = false;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double constraint_residual = 0.0;  // max_a |(sigma, w_a) - c_a|
  /// Subgradient of the nuclear norm at sigma and constraint multipliers y
  /// with ||sum_a y_a w_a - subgradient||_2 = dual residual.
  HermitianMatrix subgradient;
  std::vector<double> multipliers;
  std::optional<RecoveryDiagnostics> diagnostics;
};

/// Nuclear-norm minimization over Hermitian matrices by alternating
/// eigenvalue shrinkage and projection onto the constraint set.
RecoveryResult recover(const RecoveryProblem& problem, const SolverConfig& cfg = {});

RecoveryDiagnostics diagnose(const HermitianMatrix& sigma, const HermitianMatrix& rho,
                             double zero_tol = kDefaultZeroTol);

/// Same solver on an explicit list of orthonormal Hermitian elements.
RecoveryResult recover_elements(Eigen::Index dim,
                                const std::vector<BasisElement>& elements,
                                const std::vector<double>& coefficients,
                                const SolverConfig& cfg = {});

/// Element f * n^2 + a of the orthonormal basis of 2n x 2n matrices lifted from
/// an orthonormal basis of n x n matrices: f = 0 gives w_a~, f = 1 (i w_a)~,
/// f = 2 diag(w_a, w_a^dag)/sqrt2, f = 3 diag(i w_a, -i w_a^dag)/sqrt2.
BasisElement lifted_element(const OperatorBasis& basis, std::size_t index);

struct NonHermitianResult {
  ComplexMatrix estimate;
  RecoveryResult lifted;
  std::optional<double> relative_error;
};

/// Recovers a square matrix from complex coefficients (w_a, rho), a in omega,
/// through the Hermitian dilation.
NonHermitianResult recover_nonhermitian(const OperatorBasis& basis,
                                        const std::vector<std::size_t>& omega,
                                        const std::vector<Complex>& coefficients,
                                        const SolverConfig& cfg = {});

/// Convenience: coefficients read off a known rho; fills relative_error.
NonHermitianResult recover_nonhermitian(const ComplexMatrix& rho,
                                        const OperatorBasis& basis,
                                        const std::vector<std::size_t>& omega,
                                        const SolverConfig& cfg = {});

struct UniquenessReport {
  std::size_t kernel_dim = 0;
  std::vector<double> increments;  // per probe, min over the step sizes
  double min_increment = 0.0;
  double threshold = 0.0;
  bool likely_unique = true;
};

/// Perturbs sigma along feasible directions (random kernel directions and
/// kernel-projected directions inside the face of sigma) and reports the
/// change in nuclear norm.
UniquenessReport uniqueness_probe(const RecoveryProblem& problem,
                                  const HermitianMatrix& sigma, int trials,
                                  std::uint64_t seed = 1,
                                  double zero_tol = kDefaultZeroTol);

struct OptimalityCheck {
  double multiplier_gap = 0.0;     // ||sum y_a w_a - G||_2
  double tangent_gap = 0.0;        // ||P_T G - sign sigma||_2
  double complement_norm = 0.0;    // ||P_T^perp G||
};

OptimalityCheck check_optimality(const RecoveryProblem& problem,
                                 const RecoveryResult& result,
                                 double zero_tol = 1e-6);

}  // namespace lrr

#endif  // LRR_SOLVER_HPP_
