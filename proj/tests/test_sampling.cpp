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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lrr/error.hpp"
#include "lrr/sampling.hpp"
#include "lrr/solver.hpp"
#include "test_util.hpp"

namespace lrr {
namespace {

using test::max_abs;
using test::rng_for;

TEST(DrawOmega, EmptyForMZero) {
  EXPECT_TRUE(draw_omega(4, 0, SamplingMode::kIid, {1, 0, 0}).empty());
  EXPECT_TRUE(draw_omega(4, 0, SamplingMode::kWithoutReplacement, {1, 0, 0}).empty());
}

TEST(DrawOmega, FullWithoutReplacementIsPermutation) {
  const SampleSet s = draw_omega(4, 16, SamplingMode::kWithoutReplacement, {7, 0, 0});
  std::vector<std::size_t> sorted = s.indices;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> want(16);
  std::iota(want.begin(), want.end(), 0);
  EXPECT_EQ(sorted, want);
}

TEST(DrawOmega, WithoutReplacementIsDistinct) {
  const SampleSet s = draw_omega(8, 40, SamplingMode::kWithoutReplacement, {3, 1, 2});
  EXPECT_EQ(std::set<std::size_t>(s.indices.begin(), s.indices.end()).size(), 40u);
}

TEST(DrawOmega, TooManyWithoutReplacement) {
  EXPECT_THROW(draw_omega(4, 17, SamplingMode::kWithoutReplacement, {1, 0, 0}), InvalidInput);
}

TEST(DrawOmega, Reproducible) {
  const SampleSet a = draw_omega(8, 100, SamplingMode::kIid, {42, 3, 1});
  const SampleSet b = draw_omega(8, 100, SamplingMode::kIid, {42, 3, 1});
  const SampleSet c = draw_omega(8, 100, SamplingMode::kIid, {42, 3, 2});
  EXPECT_EQ(a.indices, b.indices);
  EXPECT_NE(a.indices, c.indices);
}

TEST(DrawOmega, UniformFrequencies) {
  const SampleSet s = draw_omega(4, 10000, SamplingMode::kIid, {5, 0, 0});
  std::vector<int> counts(16, 0);
  for (auto a : s.indices) ++counts[a];
  const double mean = 10000.0 / 16.0;
  const double sigma = std::sqrt(10000.0 * (1.0 / 16.0) * (15.0 / 16.0));
  for (int c : counts) EXPECT_LE(std::abs(c - mean), 5.0 * sigma);
}

TEST(ApplyR, FullBasisIsIdentity) {
  const OperatorBasis b = OperatorBasis::pauli(2);
  SampleSet omega;
  omega.n = 4;
  for (std::size_t a = 0; a < 16; ++a) omega.indices.push_back(a);
  auto rng = rng_for(71);
  const HermitianMatrix sigma = random_hermitian(4, rng);
  EXPECT_LE(max_abs(apply_R(omega, b, sigma).matrix() - sigma.matrix()), 1e-10);
}

TEST(ApplyR, RepeatedSingleIndex) {
  const OperatorBasis b = OperatorBasis::hermitian_standard(3);
  SampleSet omega;
  omega.n = 3;
  omega.indices.assign(7, 4);
  auto rng = rng_for(73);
  const HermitianMatrix sigma = random_hermitian(3, rng);
  const ComplexMatrix w = b.dense(4);
  const ComplexMatrix want = 9.0 * w * hs_inner(w, sigma.matrix());
  EXPECT_LE(max_abs(apply_R(omega, b, sigma).matrix() - want), 1e-12);
}

TEST(ApplyR, EmptyOmegaRejected) {
  SampleSet omega;
  omega.n = 2;
  EXPECT_THROW(apply_R(omega, OperatorBasis::pauli(1), HermitianMatrix::identity(2)),
               InvalidInput);
}

TEST(ApplyR, SelfAdjointAndLinear) {
  const OperatorBasis b = OperatorBasis::pauli(3);
  const SampleSet omega = draw_omega(8, 50, SamplingMode::kIid, {9, 0, 0});
  auto rng = rng_for(75);
  const HermitianMatrix s1 = random_hermitian(8, rng), s2 = random_hermitian(8, rng);
  const HermitianMatrix r1 = apply_R(omega, b, s1), r2 = apply_R(omega, b, s2);
  EXPECT_NEAR(std::abs(hs_inner(r1.matrix(), s2.matrix()) - hs_inner(s1.matrix(), r2.matrix())),
              0.0, 1e-10);
  const HermitianMatrix sum = apply_R(omega, b, s1 * 2.0 + s2);
  EXPECT_LE(max_abs(sum.matrix() - 2.0 * r1.matrix() - r2.matrix()), 1e-10);
}

TEST(ApplyR, ExpectationIsIdentity) {
  const OperatorBasis b = OperatorBasis::pauli(2);
  auto rng = rng_for(77);
  const HermitianMatrix sigma = random_hermitian(4, rng);
  const int draws = 2000;
  const std::size_t m = 8;
  ComplexMatrix acc = ComplexMatrix::Zero(4, 4);
  std::vector<ComplexMatrix> samples;
  for (int t = 0; t < draws; ++t) {
    const SampleSet omega =
        draw_omega(4, m, SamplingMode::kIid, {77, static_cast<std::uint64_t>(t), 0});
    samples.push_back(apply_R(omega, b, sigma).matrix());
    acc += samples.back();
  }
  acc /= draws;
  // Entrywise Monte Carlo standard error, 5 sigma slack.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double var = 0.0;
      for (const auto& s : samples) var += std::norm(s(i, j) - acc(i, j));
      const double se = std::sqrt(var / draws / draws);
      EXPECT_LE(std::abs(acc(i, j) - sigma(i, j)), 5.0 * se + 1e-12) << i << "," << j;
    }
}

TEST(ApplyR, OperatorNormBound) {
  const OperatorBasis b = OperatorBasis::pauli(2);
  const SampleSet omega = draw_omega(4, 20, SamplingMode::kIid, {13, 0, 0});
  const SamplingOperator op(omega, b);
  // Materialize R on the orthonormal basis and compare its largest singular value.
  RealMatrix mat(16, 16);
  for (std::size_t c = 0; c < 16; ++c) {
    const ComplexMatrix out = op.apply(b.dense(c));
    for (std::size_t a = 0; a < 16; ++a) mat(a, c) = hs_inner(b.dense(a), out).real();
  }
  Eigen::JacobiSVD<RealMatrix> svd(mat);
  const std::size_t maxmult = *std::max_element(op.multiplicity().begin(), op.multiplicity().end());
  EXPECT_NEAR(svd.singularValues()(0), 16.0 * maxmult / 20.0, 1e-10);
  EXPECT_NEAR(op.operator_norm(), 16.0 * maxmult / 20.0, 1e-12);
}

TEST(SplitBatches, Contiguous) {
  SampleSet omega;
  omega.n = 4;
  omega.indices = {10, 11, 12, 13, 14};
  const auto batches = split_batches(omega, BatchPlan{{3, 2}});
  ASSERT_EQ(batches.size(), 2u);
  EXPECT_EQ(batches[0].indices, (std::vector<std::size_t>{10, 11, 12}));
  EXPECT_EQ(batches[1].indices, (std::vector<std::size_t>{13, 14}));
}

TEST(SplitBatches, EmptyPlan) {
  SampleSet omega;
  omega.n = 4;
  EXPECT_TRUE(split_batches(omega, BatchPlan{}).empty());
}

TEST(SplitBatches, InconsistentPlan) {
  SampleSet omega;
  omega.n = 4;
  omega.indices = {1, 2, 3, 4, 5};
  EXPECT_THROW(split_batches(omega, BatchPlan{{3, 3}}), InvalidInput);
}

TEST(BatchPlan, OffsetsSumToTotal) {
  const BatchPlan plan{{4, 1, 7}};
  EXPECT_EQ(plan.total(), 12u);
  EXPECT_EQ(plan.offsets(), (std::vector<std::size_t>{0, 4, 5, 12}));
}

TEST(Dedup, SameKernelAsMultiset) {
  const OperatorBasis b = OperatorBasis::pauli(2);
  const SampleSet omega = draw_omega(4, 20, SamplingMode::kIid, {15, 0, 0});
  SampleSet dedup = omega;
  dedup.indices = deduplicate(omega.indices);
  ASSERT_LT(dedup.indices.size(), omega.indices.size());
  auto rng = rng_for(79);
  for (int t = 0; t < 20; ++t) {
    HermitianMatrix sigma = random_hermitian(4, rng);
    if (t % 2 == 0) {
      // Remove the sampled components so sigma lies in the kernel.
      ComplexMatrix s = sigma.matrix();
      for (auto a : dedup.indices) s -= b.dense(a) * hs_inner(b.dense(a), s);
      sigma = HermitianMatrix(s);
    }
    const bool in_full = apply_R(omega, b, sigma).matrix().norm() <= 1e-10;
    const bool in_dedup = apply_R(dedup, b, sigma).matrix().norm() <= 1e-10;
    EXPECT_EQ(in_full, in_dedup);
    EXPECT_EQ(in_full, t % 2 == 0);
  }
}

TEST(Modes, StringRoundTrip) {
  for (auto m : {SamplingMode::kIid, SamplingMode::kWithoutReplacement})
    EXPECT_EQ(sampling_mode_from_string(to_string(m)), m);
  EXPECT_THROW(sampling_mode_from_string("bernoulli"), InvalidInput);
}

}  // namespace
}  // namespace lrr
