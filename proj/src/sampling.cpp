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

#include "lrr/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace lrr {

std::string to_string(SamplingMode mode) {
  return mode == SamplingMode::kIid ? "iid" : "without-replacement";
}

SamplingMode sampling_mode_from_string(const std::string& s) {
  if (s == "iid") return SamplingMode::kIid;
  if (s == "without-replacement") return SamplingMode::kWithoutReplacement;
  throw InvalidInput("unknown sampling mode '" + s + "'");
}

SampleSet draw_omega(Eigen::Index n, std::size_t m, SamplingMode mode,
                     StreamId stream) {
  if (n < 1) throw InvalidInput("draw_omega: n must be >= 1");
  const auto universe = static_cast<std::size_t>(n * n);
  if (mode == SamplingMode::kWithoutReplacement && m > universe)
    throw InvalidInput("draw_omega: m exceeds n^2 without replacement");
  SampleSet s;
  s.n = n;
  s.mode = mode;
  s.stream = stream;
  s.indices.reserve(m);
  CounterRng rng(stream);
  if (mode == SamplingMode::kIid) {
    for (std::size_t i = 0; i < m; ++i) s.indices.push_back(rng.below(universe));
  } else {
    // Partial Fisher-Yates.
    std::vector<std::size_t> pool(universe);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + rng.below(universe - i);
      std::swap(pool[i], pool[j]);
      s.indices.push_back(pool[i]);
    }
  }
  return s;
}

SampleSet draw_batch(Eigen::Index n, std::size_t size, StreamId stream) {
  return draw_omega(n, size, SamplingMode::kIid, stream);
}

std::vector<std::size_t> deduplicate(const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> out = indices;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SamplingOperator::SamplingOperator(const SampleSet& omega,
                                   const OperatorBasis& basis)
    : n_(basis.dim()), m_(omega.size()) {
  if (omega.empty()) throw InvalidInput("sampling operator: empty sample set");
  if (omega.n != basis.dim()) throw InvalidInput("sampling operator: dim mismatch");
  std::vector<std::size_t> sorted = omega.indices;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    support_.push_back(sorted[i]);
    multiplicity_.push_back(j - i);
    elements_.push_back(basis.element(sorted[i]));
    i = j;
  }
}

ComplexMatrix SamplingOperator::apply(const ComplexMatrix& sigma) const {
  if (sigma.rows() != n_ || sigma.cols() != n_)
    throw InvalidInput("apply_R: dim mismatch");
  const double scale = static_cast<double>(n_ * n_) / static_cast<double>(m_);
  ComplexMatrix out = ComplexMatrix::Zero(n_, n_);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Complex c = elements_[i].inner(sigma);
    elements_[i].add_to(out, scale * static_cast<double>(multiplicity_[i]) * c);
  }
  return out;
}

double SamplingOperator::operator_norm() const {
  const auto top = *std::max_element(multiplicity_.begin(), multiplicity_.end());
  return static_cast<double>(n_ * n_) * static_cast<double>(top) /
         static_cast<double>(m_);
}

HermitianMatrix apply_R(const SampleSet& omega, const OperatorBasis& basis,
                        const HermitianMatrix& sigma) {
  return SamplingOperator(omega, basis).apply(sigma);
}

std::size_t BatchPlan::total() const {
  return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

std::vector<std::size_t> BatchPlan::offsets() const {
  std::vector<std::size_t> out(1, 0);
  for (auto s : sizes) out.push_back(out.back() + s);
  return out;
}

std::vector<SampleSet> split_batches(const SampleSet& omega, const BatchPlan& plan) {
  if (plan.total() != omega.size())
    throw InvalidInput("split_batches: plan does not cover the draws");
  std::vector<SampleSet> out;
  const auto off = plan.offsets();
  for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
    SampleSet b;
    b.n = omega.n;
    b.mode = omega.mode;
    b.stream = omega.stream;
    b.stream.batch = i;
    b.indices.assign(omega.indices.begin() + static_cast<std::ptrdiff_t>(off[i]),
                     omega.indices.begin() + static_cast<std::ptrdiff_t>(off[i + 1]));
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace lrr
