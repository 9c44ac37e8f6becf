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

#include "lrr/bases.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "lrr/rng.hpp"

namespace lrr {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// i^e for e mod 4.
Complex i_power(unsigned e) {
  switch (e & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// (i, j) of the t-th strictly upper-triangular position in row-major order.
std::pair<Eigen::Index, Eigen::Index> upper_pair(Eigen::Index n, Eigen::Index t) {
  Eigen::Index i = 0;
  while (t >= n - 1 - i) {
    t -= n - 1 - i;
    ++i;
  }
  return {i, i + 1 + t};
}

BasisElement sparse_from_dense(const ComplexMatrix& m) {
  BasisElement e;
  e.dim = m.rows();
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Complex(0.0)) e.entries.push_back({i, j, m(i, j)});
  return e;
}

}  // namespace

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::kHermitianStandard: return "hermitian-standard";
    case BasisKind::kPauli: return "pauli";
    case BasisKind::kStandard: return "standard";
    case BasisKind::kCustom: return "custom";
  }
  return "custom";
}

BasisKind basis_kind_from_string(const std::string& s) {
  if (s == "hermitian-standard") return BasisKind::kHermitianStandard;
  if (s == "pauli") return BasisKind::kPauli;
  if (s == "standard") return BasisKind::kStandard;
  if (s == "custom") return BasisKind::kCustom;
  throw InvalidInput("unknown basis kind '" + s + "'");
}

std::string to_string(CoherenceRoute route) {
  return route == CoherenceRoute::kFourierNorm ? "fourier-norm" : "pt-and-sign";
}

BasisElement pauli_word(int k, std::uint32_t p, std::uint32_t q) {
  const Eigen::Index n = Eigen::Index(1) << k;
  BasisElement e;
  e.dim = n;
  e.entries.reserve(n);
  const Complex phase = i_power(static_cast<unsigned>(std::popcount(p & q)));
  for (std::uint32_t row = 0; row < static_cast<std::uint32_t>(n); ++row) {
    const bool odd = std::popcount(p & row) & 1;
    e.entries.push_back({row, row ^ q, odd ? -phase : phase});
  }
  return e;
}

OperatorBasis OperatorBasis::hermitian_standard(int n) {
  if (n < 1) throw InvalidInput("hermitian_standard_basis: n must be >= 1");
  OperatorBasis b;
  b.kind_ = BasisKind::kHermitianStandard;
  b.n_ = n;
  b.fourier_bound_ = 1.0;
  return b;
}

OperatorBasis OperatorBasis::pauli(int k) {
  if (k < 1 || k > 8) throw InvalidInput("pauli_basis: k must be in [1, 8]");
  OperatorBasis b;
  b.kind_ = BasisKind::kPauli;
  b.k_ = k;
  b.n_ = Eigen::Index(1) << k;
  b.fourier_bound_ = 1.0 / static_cast<double>(b.n_);
  return b;
}

OperatorBasis OperatorBasis::standard(int n) {
  if (n < 1) throw InvalidInput("standard basis: n must be >= 1");
  OperatorBasis b;
  b.kind_ = BasisKind::kStandard;
  b.n_ = n;
  b.hermitian_ = false;
  b.fourier_bound_ = 1.0;
  return b;
}

OperatorBasis OperatorBasis::custom(std::vector<ComplexMatrix> elements) {
  if (elements.empty()) throw InvalidInput("custom basis: no elements");
  const Eigen::Index n = elements.front().rows();
  if (static_cast<std::size_t>(n * n) != elements.size())
    throw InvalidInput("custom basis: element count must equal n^2");
  OperatorBasis b;
  b.kind_ = BasisKind::kCustom;
  b.n_ = n;
  auto stored = std::make_shared<std::vector<BasisElement>>();
  stored->reserve(elements.size());
  for (const auto& m : elements) {
    if (m.rows() != n || m.cols() != n)
      throw InvalidInput("custom basis: inconsistent element shapes");
    if (!m.allFinite()) throw InvalidInput("custom basis: non-finite entry");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      b.hermitian_ = false;
    b.fourier_bound_ = std::max(b.fourier_bound_, std::pow(operator_norm(m), 2));
    stored->push_back(sparse_from_dense(m));
  }
  b.stored_ = std::move(stored);
  return b;
}

void OperatorBasis::check_index(std::size_t a) const {
  if (a >= size()) throw InvalidInput("basis index out of range");
}

BasisElement OperatorBasis::element(std::size_t a) const {
  check_index(a);
  const Eigen::Index n = n_;
  const auto idx = static_cast<Eigen::Index>(a);
  switch (kind_) {
    case BasisKind::kPauli: {
      const auto p = static_cast<std::uint32_t>(a >> k_);
      const auto q = static_cast<std::uint32_t>(a & ((std::size_t(1) << k_) - 1));
      BasisElement e = pauli_word(k_, p, q);
      const double s = 1.0 / std::sqrt(static_cast<double>(n));
      for (auto& entry : e.entries) entry.value *= s;
      return e;
    }
    case BasisKind::kHermitianStandard: {
      BasisElement e;
      e.dim = n;
      if (idx < n) {
        e.entries.push_back({idx, idx, 1.0});
        return e;
      }
      const Eigen::Index pairs = n * (n - 1) / 2;
      const Eigen::Index t = idx - n;
      const bool symmetric = t < pairs;
      const auto [i, j] = upper_pair(n, symmetric ? t : t - pairs);
      if (symmetric) {
        e.entries.push_back({i, j, kInvSqrt2});
        e.entries.push_back({j, i, kInvSqrt2});
      } else {
        e.entries.push_back({i, j, Complex(0.0, kInvSqrt2)});
        e.entries.push_back({j, i, Complex(0.0, -kInvSqrt2)});
      }
      return e;
    }
    case BasisKind::kStandard: {
      BasisElement e;
      e.dim = n;
      e.entries.push_back({idx / n, idx % n, 1.0});
      return e;
    }
    case BasisKind::kCustom:
      return (*stored_)[a];
  }
  return {};
}

BasisReport verify_basis(const OperatorBasis& basis, bool exhaustive,
                         std::uint64_t seed) {
  BasisReport report;
  const std::size_t count = basis.size();
  const Eigen::Index n = basis.dim();
  report.exhaustive = exhaustive || n <= 8;

  std::vector<BasisElement> elems;
  elems.reserve(count);
  for (std::size_t a = 0; a < count; ++a) elems.push_back(basis.element(a));

  auto record = [&](std::size_t a, std::size_t b, const ComplexMatrix& dense_a) {
    const Complex g = elems[b].inner(dense_a);  // (w_b, w_a)
    const double expected = a == b ? 1.0 : 0.0;
    report.orthonormality_deviation =
        std::max(report.orthonormality_deviation, std::abs(g - expected));
    ++report.pairs_checked;
  };

  if (report.exhaustive) {
    for (std::size_t a = 0; a < count; ++a) {
      const ComplexMatrix dense_a = elems[a].dense();
      for (std::size_t b = a; b < count; ++b) record(a, b, dense_a);
    }
  } else {
    for (std::size_t a = 0; a < count; ++a) record(a, a, elems[a].dense());
    CounterRng rng(seed);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t a = rng.below(count);
      std::size_t b = rng.below(count - 1);
      if (b >= a) ++b;
      record(a, b, elems[a].dense());
    }
  }

  // sum_a w_a^dag w_a, entry (i, j) = sum_k conj(w_ki) w_kj.
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (auto e : elems) {
    std::sort(e.entries.begin(), e.entries.end(),
              [](const auto& x, const auto& y) { return x.row < y.row; });
    for (std::size_t s = 0; s < e.entries.size();) {
      std::size_t t = s;
      while (t < e.entries.size() && e.entries[t].row == e.entries[s].row) ++t;
      for (std::size_t u = s; u < t; ++u)
        for (std::size_t v = s; v < t; ++v)
          acc(e.entries[u].col, e.entries[v].col) +=
              std::conj(e.entries[u].value) * e.entries[v].value;
      s = t;
    }
  }
  acc -= static_cast<double>(n) * ComplexMatrix::Identity(n, n);
  report.completeness_deviation = acc.cwiseAbs().maxCoeff();
  return report;
}

std::vector<double> tangent_weights(const TangentSpace& t,
                                    const OperatorBasis& basis) {
  if (t.dim() != basis.dim()) throw InvalidInput("tangent_weights: dim mismatch");
  const ComplexMatrix u = t.range();
  std::vector<double> out(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const BasisElement e = basis.element(a);
    const ComplexMatrix wu = e.times(u);
    ComplexMatrix udw = ComplexMatrix::Zero(basis.dim(), u.cols());  // w^dag u
    for (const auto& entry : e.entries)
      udw.row(entry.col) += std::conj(entry.value) * u.row(entry.row);
    // ||P_T w||^2 = ||U^dag w||^2 + ||w U||^2 - ||U^dag w U||^2
    const ComplexMatrix core = u.adjoint() * wu;
    out[a] = udw.squaredNorm() + wu.squaredNorm() - core.squaredNorm();
  }
  return out;
}

CoherenceReport coherence(const HermitianMatrix& rho, const OperatorBasis& basis,
                          double zero_tol) {
  if (rho.dim() != basis.dim()) throw InvalidInput("coherence: dim mismatch");
  if (rho.matrix().cwiseAbs().maxCoeff() == 0.0)
    throw InvalidInput("coherence: rho must be non-zero");
  const TangentSpace t(rho, zero_tol);
  const auto sign = matrix_sign(rho, zero_tol);
  const double n = static_cast<double>(basis.dim());
  const double r = static_cast<double>(t.rank());

  CoherenceReport rep;
  rep.rank = t.rank();
  rep.fourier_term = n * basis.fourier_bound();
  const auto weights = tangent_weights(t, basis);
  rep.pt_term = n / (2.0 * r) * *std::max_element(weights.begin(), weights.end());
  double max_overlap = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    max_overlap = std::max(max_overlap, std::norm(basis.coefficient(a, sign.matrix())));
  rep.sign_term = n * n / r * max_overlap;

  if (rep.fourier_term <= rep.nu_pt_sign()) {
    rep.nu = rep.fourier_term;
    rep.route = CoherenceRoute::kFourierNorm;
  } else {
    rep.nu = rep.nu_pt_sign();
    rep.route = CoherenceRoute::kPtAndSign;
  }
  return rep;
}

CoherenceReport coherence_nonhermitian(const ComplexMatrix& rho,
                                       const OperatorBasis& basis,
                                       double zero_tol) {
  if (rho.rows() != rho.cols() || rho.rows() != basis.dim())
    throw InvalidInput("coherence_nonhermitian: dim mismatch");
  if (rho.cwiseAbs().maxCoeff() == 0.0)
    throw InvalidInput("coherence_nonhermitian: rho must be non-zero");
  const GeneralTangentSpace t(rho, zero_tol);
  const ComplexMatrix e = polar_unitary_part(rho, zero_tol);
  const double n = static_cast<double>(basis.dim());
  const double r = static_cast<double>(t.rank());

  CoherenceReport rep;
  rep.rank = t.rank();
  rep.fourier_term = n * basis.fourier_bound() / 2.0;
  double max_pt = 0.0, max_overlap = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const ComplexMatrix w = basis.dense(a);
    max_pt = std::max(max_pt, t.project(w).squaredNorm());
    max_overlap = std::max(max_overlap, std::norm(hs_inner(w, e)));
  }
  rep.pt_term = n / (2.0 * r) * max_pt;
  rep.sign_term = 2.0 * n * n / r * max_overlap;
  if (rep.fourier_term <= rep.nu_pt_sign()) {
    rep.nu = rep.fourier_term;
    rep.route = CoherenceRoute::kFourierNorm;
  } else {
    rep.nu = rep.nu_pt_sign();
    rep.route = CoherenceRoute::kPtAndSign;
  }
  return rep;
}

double mu_overlap(const ComplexMatrix& f, const OperatorBasis& basis) {
  if (f.rows() != basis.dim() || f.cols() != basis.dim())
    throw InvalidInput("mu_overlap: dim mismatch");
  double best = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    best = std::max(best, std::norm(basis.coefficient(a, f)));
  return best;
}

}  // namespace lrr
