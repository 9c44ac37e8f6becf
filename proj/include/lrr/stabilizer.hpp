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

#ifndef LRR_STABILIZER_HPP_
#define LRR_STABILIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lrr/bases.hpp"

namespace lrr {

/// Vectors of F_2^k are held in the low k bits of an integer; bit j is the
/// coefficient of x^j when the vector is read as a field element.
using GF2Vector = std::uint32_t;

class GF2kField {
 public:
  /// Field with the pinned polynomial for 1 <= k <= 6.
  static GF2kField standard(int k);
  /// Rejects polynomials that are not irreducible of degree k (k <= 8).
  GF2kField(int k, std::uint32_t polynomial);

  int k() const { return k_; }
  std::uint32_t polynomial() const { return poly_; }
  std::uint32_t size() const { return 1u << k_; }
  GF2Vector mul(GF2Vector x, GF2Vector y) const;
  /// Absolute trace x + x^2 + ... + x^(2^(k-1)), either 0 or 1.
  GF2Vector trace(GF2Vector x) const;
  /// x*p written in the basis dual to {1, t, ..., t^(k-1)} under the trace
  /// form: bit j is Tr(x p t^j). The bit dot product p'.slope(x, p) equals
  /// Tr(x p p'), which is symmetric in p and p'.
  GF2Vector slope(GF2Vector x, GF2Vector p) const;

 private:
  int k_;
  std::uint32_t poly_;
};

bool is_irreducible(std::uint32_t polynomial);

inline GF2Vector gf2k_mul(const GF2kField& f, GF2Vector x, GF2Vector y) {
  return f.mul(x, y);
}

/// Dense unnormalized Pauli word w(p, q).
HermitianMatrix pauli_w(int k, GF2Vector p, GF2Vector q);

/// lambda in w(p,q) w(p',q') = lambda w(p+p', q+q'), as a power of i (0..3).
int pauli_product_phase(int k, GF2Vector p, GF2Vector q, GF2Vector p2, GF2Vector q2);

/// Whether w(p,q) and w(p',q') commute.
bool pauli_commute(GF2Vector p, GF2Vector q, GF2Vector p2, GF2Vector q2);

struct StabilizerElement {
  int sign = 1;  // +1 or -1
  GF2Vector p = 0;
  GF2Vector q = 0;
};

/// G_x = {+-w(p, slope(x, p))}: generated by w(b_i, slope(x, b_i)) over the standard bit
/// basis, with elements indexed by p.
class StabilizerGroup {
 public:
  StabilizerGroup(const GF2kField& field, GF2Vector x);

  int k() const { return k_; }
  GF2Vector x() const { return x_; }
  const std::vector<StabilizerElement>& generators() const { return generators_; }
  const std::vector<StabilizerElement>& elements() const { return elements_; }
  /// Pauli basis index p * 2^k + q of the element labelled p.
  std::size_t basis_index(GF2Vector p) const;

 private:
  int k_;
  GF2Vector x_;
  std::vector<StabilizerElement> generators_;
  std::vector<StabilizerElement> elements_;
};

/// chi_y(element p) = (-1)^{y . p}.
struct GroupCharacter {
  GF2Vector y = 0;
  int operator()(GF2Vector p) const;
};

/// 2^-k sum_g chi(g) g.
HermitianMatrix stabilizer_projector(const StabilizerGroup& g, const GroupCharacter& chi);

struct AmbiguousPair {
  GF2Vector x = 0;
  GroupCharacter chi1;
  GroupCharacter chi2;
  HermitianMatrix p1;
  HermitianMatrix p2;
  std::size_t intersection = 0;  // distinct elements of omega inside G_x
  double max_residual = 0.0;     // max_{a in omega} |(w_a, P1) - (w_a, P2)|
};

/// Scans the groups G_x for one whose labels meeting omega (0-based Pauli
/// indices) span fewer than k dimensions and splits two characters on it.
std::optional<AmbiguousPair> find_ambiguous_pair(int k,
                                                 const std::vector<std::size_t>& omega);

struct LowerBoundReport {
  int k = 0;
  std::size_t m = 0;
  double epsilon = 0.0;
  int trials = 0;
  double frequency = 0.0;      // fraction of trials with |omega cap G_x| < k
  double half_width = 0.0;     // 3 sigma
  double printed_bound = 0.0;  // 1 - n^{-eps^2 / (2 ln2 (1 + eps/3))}
  bool consistent() const { return frequency >= printed_bound - half_width; }
};

double stabilizer_failure_bound(int k, double epsilon);

LowerBoundReport lower_bound_trial(int k, std::size_t m, double epsilon, int trials,
                                   std::uint64_t seed);

}  // namespace lrr

#endif  // LRR_STABILIZER_HPP_
