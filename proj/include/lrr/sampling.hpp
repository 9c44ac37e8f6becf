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

#ifndef LRR_SAMPLING_HPP_
#define LRR_SAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lrr/bases.hpp"
#include "lrr/rng.hpp"

namespace lrr {

enum class SamplingMode { kIid, kWithoutReplacement };

std::string to_string(SamplingMode mode);
SamplingMode sampling_mode_from_string(const std::string& s);

/// Multiset of 0-based basis indices.
struct SampleSet {
  Eigen::Index n = 0;
  std::vector<std::size_t> indices;
  SamplingMode mode = SamplingMode::kIid;
  StreamId stream;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

SampleSet draw_omega(Eigen::Index n, std::size_t m, SamplingMode mode,
                     StreamId stream);

/// Sorted distinct indices.
std::vector<std::size_t> deduplicate(const std::vector<std::size_t>& indices);

/// The rescaled sampling operator (n^2/m) sum_i w_{A_i} (w_{A_i}, .) with the
/// sampled elements cached.
class SamplingOperator {
 public:
  SamplingOperator(const SampleSet& omega, const OperatorBasis& basis);

  Eigen::Index dim() const { return n_; }
  std::size_t samples() const { return m_; }
  /// Distinct sampled indices, ascending, with their multiplicities.
  const std::vector<std::size_t>& support() const { return support_; }
  const std::vector<std::size_t>& multiplicity() const { return multiplicity_; }
  const std::vector<BasisElement>& elements() const { return elements_; }

  ComplexMatrix apply(const ComplexMatrix& sigma) const;
  HermitianMatrix apply(const HermitianMatrix& sigma) const {
    return HermitianMatrix::trusted(apply(sigma.matrix()));
  }

  /// n^2 * (max multiplicity) / m.
  double operator_norm() const;

 private:
  Eigen::Index n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::size_t> support_;
  std::vector<std::size_t> multiplicity_;
  std::vector<BasisElement> elements_;
};

HermitianMatrix apply_R(const SampleSet& omega, const OperatorBasis& basis,
                        const HermitianMatrix& sigma);

struct BatchPlan {
  std::vector<std::size_t> sizes;

  std::size_t total() const;
  /// offsets[i] is the first draw of batch i; offsets.back() == total().
  std::vector<std::size_t> offsets() const;
};

/// Contiguous batches of omega; batch i keeps omega's stream with batch = i.
std::vector<SampleSet> split_batches(const SampleSet& omega, const BatchPlan& plan);

/// Fresh i.i.d. batch of `size` draws on stream (seed, trial, batch).
SampleSet draw_batch(Eigen::Index n, std::size_t size, StreamId stream);

}  // namespace lrr

#endif  // LRR_SAMPLING_HPP_
