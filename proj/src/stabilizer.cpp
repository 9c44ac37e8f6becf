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

#include "lrr/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "lrr/rng.hpp"
#include "lrr/sampling.hpp"

namespace lrr {

namespace {

int degree(std::uint32_t poly) { return poly == 0 ? -1 : 31 - std::countl_zero(poly); }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t m) {
  const int dm = degree(m);
  for (int d = degree(a); d >= dm; d = degree(a)) a ^= m << (d - dm);
  return a;
}

int parity(std::uint32_t v) { return std::popcount(v) & 1; }

// Rank over F_2 of a set of bit vectors.
int gf2_rank(std::vector<GF2Vector> rows) {
  int rank = 0;
  for (int bit = 31; bit >= 0; --bit) {
    const GF2Vector mask = GF2Vector{1} << bit;
    auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                              [&](GF2Vector v) { return (v & mask) != 0; });
    if (pivot == rows.end()) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], *pivot);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != static_cast<std::size_t>(rank) && (rows[i] & mask))
        rows[i] ^= rows[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank;
}

bool in_span(const std::vector<GF2Vector>& rows, GF2Vector v) {
  std::vector<GF2Vector> extended = rows;
  extended.push_back(v);
  return gf2_rank(extended) == gf2_rank(rows);
}

}  // namespace

bool is_irreducible(std::uint32_t poly) {
  const int d = degree(poly);
  if (d < 1 || d > 8) return false;
  for (std::uint32_t f = 2; degree(f) <= d / 2; ++f)
    if (poly_mod(poly, f) == 0) return false;
  return true;
}

GF2kField::GF2kField(int k, std::uint32_t polynomial) : k_(k), poly_(polynomial) {
  if (k < 1 || k > 8) throw InvalidInput("GF(2^k): k must be in [1, 8]");
  if (degree(polynomial) != k || !is_irreducible(polynomial))
    throw InvalidInput("GF(2^k): polynomial is not irreducible of degree k");
}

GF2kField GF2kField::standard(int k) {
  switch (k) {
    case 1: return GF2kField(1, 0b10);          // x
    case 2: return GF2kField(2, 0b111);         // x^2 + x + 1
    case 3: return GF2kField(3, 0b1011);        // x^3 + x + 1
    case 4: return GF2kField(4, 0b10011);       // x^4 + x + 1
    case 5: return GF2kField(5, 0b100101);      // x^5 + x^2 + 1
    case 6: return GF2kField(6, 0b1000011);     // x^6 + x + 1
    default: throw InvalidInput("GF(2^k): no pinned polynomial for this k");
  }
}

GF2Vector GF2kField::mul(GF2Vector x, GF2Vector y) const {
  const GF2Vector mask = size() - 1;
  x &= mask;
  y &= mask;
  std::uint32_t prod = 0;
  for (int bit = 0; bit < k_; ++bit)
    if (y & (1u << bit)) prod ^= x << bit;
  return poly_mod(prod, poly_);
}

GF2Vector GF2kField::trace(GF2Vector x) const {
  GF2Vector acc = 0, power = x & (size() - 1);
  for (int i = 0; i < k_; ++i) {
    acc ^= power;
    power = mul(power, power);
  }
  return acc;
}

GF2Vector GF2kField::slope(GF2Vector x, GF2Vector p) const {
  const GF2Vector xp = mul(x, p);
  GF2Vector q = 0;
  for (int j = 0; j < k_; ++j)
    if (trace(mul(xp, 1u << j)) & 1u) q |= 1u << j;
  return q;
}

HermitianMatrix pauli_w(int k, GF2Vector p, GF2Vector q) {
  if (k < 1 || k > 8) throw InvalidInput("pauli_w: k must be in [1, 8]");
  const GF2Vector mask = (1u << k) - 1;
  if ((p & ~mask) || (q & ~mask)) throw InvalidInput("pauli_w: label exceeds k bits");
  return HermitianMatrix::trusted(pauli_word(k, p, q).dense());
}

int pauli_product_phase(int k, GF2Vector p, GF2Vector q, GF2Vector p2, GF2Vector q2) {
  int e = 0;
  for (int j = 0; j < k; ++j) {
    const int a = (p >> j) & 1, b = (q >> j) & 1, c = (p2 >> j) & 1, d = (q2 >> j) & 1;
    e += a * b + c * d - (a ^ c) * (b ^ d) + 2 * b * c;
  }
  return ((e % 4) + 4) % 4;
}

bool pauli_commute(GF2Vector p, GF2Vector q, GF2Vector p2, GF2Vector q2) {
  return ((std::popcount(p & q2) + std::popcount(q & p2)) & 1) == 0;
}

StabilizerGroup::StabilizerGroup(const GF2kField& field, GF2Vector x)
    : k_(field.k()), x_(x & (field.size() - 1)) {
  for (int i = 0; i < k_; ++i) {
    const GF2Vector b = 1u << i;
    generators_.push_back({1, b, field.slope(x_, b)});
  }
  elements_.resize(field.size());
  for (GF2Vector p = 0; p < field.size(); ++p) {
    StabilizerElement cur{1, 0, 0};
    for (int i = 0; i < k_; ++i) {
      if (!(p & (1u << i))) continue;
      const auto& g = generators_[static_cast<std::size_t>(i)];
      const int phase = pauli_product_phase(k_, cur.p, cur.q, g.p, g.q);
      if (phase % 2 != 0) throw InvalidInput("stabilizer: generators do not commute");
      cur.sign *= (phase == 2 ? -1 : 1) * g.sign;
      cur.p ^= g.p;
      cur.q ^= g.q;
    }
    elements_[p] = cur;
  }
}

std::size_t StabilizerGroup::basis_index(GF2Vector p) const {
  const auto& e = elements_.at(p);
  return pauli_index(k_, e.p, e.q);
}

int GroupCharacter::operator()(GF2Vector p) const { return parity(y & p) ? -1 : 1; }

HermitianMatrix stabilizer_projector(const StabilizerGroup& g, const GroupCharacter& chi) {
  const Eigen::Index n = Eigen::Index(1) << g.k();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (const auto& e : g.elements())
    pauli_word(g.k(), e.p, e.q).add_to(acc, static_cast<double>(chi(e.p) * e.sign));
  return HermitianMatrix::trusted(acc / static_cast<double>(n));
}

std::optional<AmbiguousPair> find_ambiguous_pair(int k,
                                                 const std::vector<std::size_t>& omega) {
  const GF2kField field = GF2kField::standard(k);
  const std::size_t n = std::size_t{1} << k;
  for (auto a : omega)
    if (a >= n * n) throw InvalidInput("find_ambiguous_pair: index out of range");
  const std::set<std::size_t> labels(omega.begin(), omega.end());
  const OperatorBasis basis = OperatorBasis::pauli(k);

  for (GF2Vector x = 0; x < field.size(); ++x) {
    const StabilizerGroup g(field, x);
    std::vector<GF2Vector> hit;
    for (GF2Vector p = 0; p < field.size(); ++p)
      if (labels.count(g.basis_index(p))) hit.push_back(p);
    if (gf2_rank(hit) >= k) continue;

    int j = 0;
    while (in_span(hit, 1u << j)) ++j;
    GF2Vector y = 1;
    for (; y < field.size(); ++y) {
      if (!((y >> j) & 1u)) continue;
      bool orthogonal = true;
      for (auto s : hit) orthogonal = orthogonal && !parity(y & s);
      if (orthogonal) break;
    }
    AmbiguousPair out;
    out.x = x;
    out.chi1 = GroupCharacter{0};
    out.chi2 = GroupCharacter{y};
    out.p1 = stabilizer_projector(g, out.chi1);
    out.p2 = stabilizer_projector(g, out.chi2);
    out.intersection = hit.size();
    for (auto a : labels)
      out.max_residual = std::max(
          out.max_residual, std::abs(basis.coefficient(a, out.p1.matrix()) -
                                     basis.coefficient(a, out.p2.matrix())));
    return out;
  }
  return std::nullopt;
}

double stabilizer_failure_bound(int k, double epsilon) {
  const double n = std::ldexp(1.0, k);
  const double e = epsilon * epsilon / (2.0 * std::log(2.0) * (1.0 + epsilon / 3.0));
  return 1.0 - std::pow(n, -e);
}

LowerBoundReport lower_bound_trial(int k, std::size_t m, double epsilon, int trials,
                                   std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("lower_bound_trial: trials must be >= 1");
  if (!(epsilon > 0.0)) throw InvalidInput("lower_bound_trial: epsilon must be > 0");
  const GF2kField field = GF2kField::standard(k);
  const StabilizerGroup g(field, 0);
  std::set<std::size_t> group_labels;
  for (GF2Vector p = 0; p < field.size(); ++p) group_labels.insert(g.basis_index(p));
  const Eigen::Index n = Eigen::Index(1) << k;

  LowerBoundReport rep;
  rep.k = k;
  rep.m = m;
  rep.epsilon = epsilon;
  rep.trials = trials;
  rep.printed_bound = stabilizer_failure_bound(k, epsilon);
  int ambiguous = 0;
  for (int t = 0; t < trials; ++t) {
    const SampleSet omega =
        draw_omega(n, m, SamplingMode::kIid, StreamId{seed, static_cast<std::uint64_t>(t), 0});
    std::set<std::size_t> met;
    for (auto a : omega.indices)
      if (group_labels.count(a)) met.insert(a);
    ambiguous += static_cast<int>(met.size()) < k;
  }
  rep.frequency = static_cast<double>(ambiguous) / trials;
  rep.half_width = 3.0 * std::sqrt(rep.frequency * (1.0 - rep.frequency) / trials);
  return rep;
}

}  // namespace lrr
