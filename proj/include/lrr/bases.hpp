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

#ifndef LRR_BASES_HPP_
#define LRR_BASES_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lrr/matcore.hpp"

namespace lrr {

enum class BasisKind {
  kHermitianStandard,  // diagonal e_i e_i^dag, then symmetric, then antisymmetric
  kPauli,              // normalized Pauli words w(p, q) / sqrt(n), n = 2^k
  kStandard,           // non-Hermitian matrix units e_i e_j^dag
  kCustom,
};

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& s);

/// One basis matrix stored as its non-zero entries.
struct BasisElement {
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    Complex value;
  };

  Eigen::Index dim = 0;
  std::vector<Entry> entries;

  /// (w, s) = tr(w^dag s).
  template <typename Derived>
  Complex inner(const Eigen::MatrixBase<Derived>& s) const {
    Complex acc = 0.0;
    for (const auto& e : entries) acc += std::conj(e.value) * s(e.row, e.col);
    return acc;
  }

  /// s += alpha * w.
  template <typename Derived>
  void add_to(Eigen::MatrixBase<Derived>& s, Complex alpha) const {
    for (const auto& e : entries) s(e.row, e.col) += alpha * e.value;
  }

  /// w * u for a dense n x k matrix u.
  ComplexMatrix times(const ComplexMatrix& u) const {
    ComplexMatrix out = ComplexMatrix::Zero(dim, u.cols());
    for (const auto& e : entries) out.row(e.row) += e.value * u.row(e.col);
    return out;
  }

  ComplexMatrix dense() const {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (const auto& e : entries) m(e.row, e.col) += e.value;
    return m;
  }
};

/// Ordered orthonormal basis of the n x n matrices. Indices are 0-based in
/// the API and 1-based in every serialized format.
///
/// Built-in kinds generate elements on demand from the index; custom bases
/// hold their elements.
class OperatorBasis {
 public:
  static OperatorBasis hermitian_standard(int n);
  static OperatorBasis pauli(int k);
  static OperatorBasis standard(int n);
  /// Elements are taken as given; run verify_basis before trusting them.
  static OperatorBasis custom(std::vector<ComplexMatrix> elements);

  BasisKind kind() const { return kind_; }
  Eigen::Index dim() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_ * n_); }
  /// Number of qubits for the Pauli basis, 0 otherwise.
  int qubits() const { return k_; }
  bool hermitian() const { return hermitian_; }

  /// max_a ||w_a||^2 (squared operator norm).
  double fourier_bound() const { return fourier_bound_; }

  BasisElement element(std::size_t a) const;
  ComplexMatrix dense(std::size_t a) const { return element(a).dense(); }

  /// (w_a, s).
  Complex coefficient(std::size_t a, const ComplexMatrix& s) const {
    return element(a).inner(s);
  }

 private:
  OperatorBasis() = default;
  void check_index(std::size_t a) const;

  BasisKind kind_ = BasisKind::kCustom;
  Eigen::Index n_ = 0;
  int k_ = 0;
  bool hermitian_ = true;
  double fourier_bound_ = 0.0;
  std::shared_ptr<const std::vector<BasisElement>> stored_;
};

/// Pauli index of the label (p, q), with p, q read as big-endian bit vectors:
/// a = p * 2^k + q.
inline std::size_t pauli_index(int k, std::uint32_t p, std::uint32_t q) {
  return (static_cast<std::size_t>(p) << k) | q;
}

/// Unnormalized Pauli word w(p, q) as a sparse element (one entry per row).
BasisElement pauli_word(int k, std::uint32_t p, std::uint32_t q);

struct BasisReport {
  double orthonormality_deviation = 0.0;  // max |(w_a, w_b) - delta_ab|
  double completeness_deviation = 0.0;    // max |sum_a w_a^dag w_a - n 1|
  std::size_t pairs_checked = 0;
  bool exhaustive = false;

  bool ok(double tol) const {
    return orthonormality_deviation <= tol && completeness_deviation <= tol;
  }
};

/// Checks orthonormality (every pair when exhaustive or n <= 8, otherwise all
/// norms plus 1000 random pairs) and the completeness relation.
BasisReport verify_basis(const OperatorBasis& basis, bool exhaustive = false,
                         std::uint64_t seed = 0x5eed);

enum class CoherenceRoute { kFourierNorm, kPtAndSign };

std::string to_string(CoherenceRoute route);

struct CoherenceReport {
  double nu = 0.0;
  CoherenceRoute route = CoherenceRoute::kFourierNorm;
  Eigen::Index rank = 0;
  // Detail fields; nu_pt_sign = max(pt_term, sign_term).
  double fourier_term = 0.0;  // n max_a ||w_a||^2
  double pt_term = 0.0;       // (n / 2r) max_a ||P_T w_a||_2^2
  double sign_term = 0.0;     // (n^2 / r) max_a (w_a, sign rho)^2
  double nu_pt_sign() const { return std::max(pt_term, sign_term); }
};

/// Smallest nu for which rho is incoherent with the basis, along whichever
/// of the two routes gives the smaller value.
CoherenceReport coherence(const HermitianMatrix& rho, const OperatorBasis& basis,
                          double zero_tol = kDefaultZeroTol);

/// Coherence for square non-Hermitian rho: either max ||w_a||^2 <= 2nu/n, or
/// max ||P_T w_a||^2 <= 2nu r/n together with max |(w_a, E(rho))|^2 <=
/// nu r / (2 n^2). Detail fields hold the nu implied by each condition.
CoherenceReport coherence_nonhermitian(const ComplexMatrix& rho,
                                       const OperatorBasis& basis,
                                       double zero_tol = kDefaultZeroTol);

/// mu(F) = max_a |(w_a, F)|^2.
double mu_overlap(const ComplexMatrix& f, const OperatorBasis& basis);
inline double mu_overlap(const HermitianMatrix& f, const OperatorBasis& basis) {
  return mu_overlap(f.matrix(), basis);
}

/// ||P_T w_a||_2^2 for every basis element (Hermitian bases).
std::vector<double> tangent_weights(const TangentSpace& t,
                                    const OperatorBasis& basis);

}  // namespace lrr

#endif  // LRR_BASES_HPP_
