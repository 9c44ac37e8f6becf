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

#include "lrr/bases.hpp"
#include "lrr/error.hpp"
#include "test_util.hpp"

namespace lrr {
namespace {

using test::basis_vector_outer;
using test::max_abs;
using test::rng_for;

ComplexMatrix pauli_matrix(int which) {
  const Complex i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  switch (which) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

TEST(HermitianStandard, NOne) {
  const OperatorBasis b = OperatorBasis::hermitian_standard(1);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.dense(0)(0, 0), Complex(1.0));
}

TEST(HermitianStandard, NTwoContainsSigma1) {
  const OperatorBasis b = OperatorBasis::hermitian_standard(2);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_LE(max_abs(b.dense(0) - basis_vector_outer(2, 0, 0)), 0.0);
  EXPECT_LE(max_abs(b.dense(1) - basis_vector_outer(2, 1, 1)), 0.0);
  EXPECT_LE(max_abs(b.dense(2) - pauli_matrix(1) / std::sqrt(2.0)), 1e-15);
  const Complex i(0.0, 1.0);
  EXPECT_LE(max_abs(b.dense(3) - i / std::sqrt(2.0) *
                                     (basis_vector_outer(2, 0, 1) - basis_vector_outer(2, 1, 0))),
            1e-15);
}

TEST(HermitianStandard, GramIsIdentityForN5) {
  const OperatorBasis b = OperatorBasis::hermitian_standard(5);
  double worst = 0.0;
  for (std::size_t a = 0; a < b.size(); ++a)
    for (std::size_t c = 0; c < b.size(); ++c)
      worst = std::max(worst, std::abs(hs_inner(b.dense(a), b.dense(c)) - (a == c ? 1.0 : 0.0)));
  EXPECT_LE(worst, 1e-12);
}

TEST(HermitianStandard, OrderingContract) {
  const int n = 4;
  const OperatorBasis b = OperatorBasis::hermitian_standard(n);
  std::size_t a = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      const ComplexMatrix want =
          (basis_vector_outer(n, i, j) + basis_vector_outer(n, j, i)) / std::sqrt(2.0);
      EXPECT_LE(max_abs(b.dense(a) - want), 1e-15) << a;
    }
  const Complex im(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      const ComplexMatrix want =
          im / std::sqrt(2.0) * (basis_vector_outer(n, i, j) - basis_vector_outer(n, j, i));
      EXPECT_LE(max_abs(b.dense(a) - want), 1e-15) << a;
    }
  EXPECT_EQ(a, b.size());
}

TEST(HermitianStandard, RejectsNonPositive) {
  EXPECT_THROW(OperatorBasis::hermitian_standard(0), InvalidInput);
}

TEST(Pauli, KOneIsTheNormalizedPauliSetUpToSign) {
  const OperatorBasis b = OperatorBasis::pauli(1);
  ASSERT_EQ(b.size(), 4u);
  for (int which = 0; which < 4; ++which) {
    const ComplexMatrix want = pauli_matrix(which) / std::sqrt(2.0);
    int hits = 0;
    for (std::size_t a = 0; a < 4; ++a)
      hits += max_abs(b.dense(a) - want) <= 1e-15 || max_abs(b.dense(a) + want) <= 1e-15;
    EXPECT_EQ(hits, 1) << which;
  }
}

TEST(Pauli, LabelOrderForKOne) {
  const OperatorBasis b = OperatorBasis::pauli(1);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_LE(max_abs(b.dense(pauli_index(1, 0, 0)) - s * pauli_matrix(0)), 1e-15);
  EXPECT_LE(max_abs(b.dense(pauli_index(1, 0, 1)) - s * pauli_matrix(1)), 1e-15);
  EXPECT_LE(max_abs(b.dense(pauli_index(1, 1, 0)) - s * pauli_matrix(3)), 1e-15);
  // w(1,1) = i sigma_3 sigma_1 = -sigma_2
  const Complex i(0.0, 1.0);
  const ComplexMatrix w11 = i * pauli_matrix(3) * pauli_matrix(1);
  EXPECT_LE(max_abs(w11 + pauli_matrix(2)), 1e-15);
  EXPECT_LE(max_abs(b.dense(pauli_index(1, 1, 1)) - s * w11), 1e-15);
}

TEST(Pauli, TensorStructureBigEndian) {
  const OperatorBasis b = OperatorBasis::pauli(2);
  const OperatorBasis b1 = OperatorBasis::pauli(1);
  for (std::uint32_t p = 0; p < 4; ++p)
    for (std::uint32_t q = 0; q < 4; ++q) {
      const ComplexMatrix first = b1.dense(pauli_index(1, p >> 1, q >> 1));
      const ComplexMatrix second = b1.dense(pauli_index(1, p & 1, q & 1));
      ComplexMatrix kron(4, 4);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) kron.block(2 * r, 2 * c, 2, 2) = first(r, c) * second;
      EXPECT_LE(max_abs(b.dense(pauli_index(2, p, q)) - kron), 1e-15);
    }
}

TEST(Pauli, FourierBoundIsOneOverN) {
  const OperatorBasis b = OperatorBasis::pauli(3);
  double worst = 0.0;
  for (std::size_t a = 0; a < b.size(); ++a) {
    const double op = operator_norm(b.dense(a));
    worst = std::max(worst, op * op);
  }
  EXPECT_NEAR(worst, 1.0 / 8.0, 1e-15);
  EXPECT_NEAR(b.fourier_bound(), 1.0 / 8.0, 1e-15);
}

TEST(Pauli, KOutOfRange) {
  EXPECT_THROW(OperatorBasis::pauli(0), InvalidInput);
  EXPECT_THROW(OperatorBasis::pauli(9), InvalidInput);
}

TEST(Pauli, ElementsAreHermitian) {
  const OperatorBasis b = OperatorBasis::pauli(3);
  for (std::size_t a = 0; a < b.size(); ++a) {
    const ComplexMatrix w = b.dense(a);
    EXPECT_LE(max_abs(w - w.adjoint()), 0.0);
  }
}

TEST(Pauli, GroupClosureAndCommutation) {
  for (int k = 1; k <= 3; ++k) {
    const std::uint32_t n = 1u << k;
    auto word = [&](std::uint32_t p, std::uint32_t q) {
      return pauli_word(k, p, q).dense();
    };
    for (std::uint32_t p = 0; p < n; ++p)
      for (std::uint32_t q = 0; q < n; ++q)
        for (std::uint32_t p2 = 0; p2 < n; ++p2)
          for (std::uint32_t q2 = 0; q2 < n; ++q2) {
            const ComplexMatrix a = word(p, q), b = word(p2, q2);
            const ComplexMatrix prod = a * b;
            const ComplexMatrix target = word(p ^ p2, q ^ q2);
            const Complex lambda = hs_inner(target, prod) / static_cast<double>(n);
            EXPECT_LE(max_abs(prod - lambda * target), 1e-12);
            const bool unit = std::abs(std::abs(lambda.real()) + std::abs(lambda.imag()) - 1.0) < 1e-12 &&
                              (std::abs(lambda.real()) < 1e-12 || std::abs(lambda.imag()) < 1e-12);
            EXPECT_TRUE(unit);
            const int sym = (std::popcount(p & q2) + std::popcount(q & p2)) & 1;
            const double phase = sym ? -1.0 : 1.0;
            EXPECT_LE(max_abs(a * b - phase * b * a), 1e-12);
          }
  }
}

TEST(VerifyBasis, PauliTwo) {
  const BasisReport r = verify_basis(OperatorBasis::pauli(2));
  EXPECT_TRUE(r.exhaustive);
  EXPECT_LE(r.orthonormality_deviation, 1e-12);
  EXPECT_LE(r.completeness_deviation, 1e-12);
}

TEST(VerifyBasis, HermitianStandardFour) {
  const BasisReport r = verify_basis(OperatorBasis::hermitian_standard(4));
  EXPECT_LE(r.orthonormality_deviation, 1e-12);
  EXPECT_LE(r.completeness_deviation, 1e-12);
}

TEST(VerifyBasis, PlantedRescaledElement) {
  const OperatorBasis pauli = OperatorBasis::pauli(1);
  std::vector<ComplexMatrix> elements;
  for (std::size_t a = 0; a < pauli.size(); ++a) elements.push_back(pauli.dense(a));
  elements[2] *= 2.0;
  const BasisReport r = verify_basis(OperatorBasis::custom(elements));
  EXPECT_NEAR(r.orthonormality_deviation, 3.0, 1e-12);
  EXPECT_GT(r.completeness_deviation, 1.0);
}

TEST(VerifyBasis, LargeBasisSpotChecks) {
  const BasisReport r = verify_basis(OperatorBasis::hermitian_standard(16));
  EXPECT_FALSE(r.exhaustive);
  EXPECT_GE(r.pairs_checked, 1000u);
  EXPECT_LE(r.orthonormality_deviation, 1e-12);
  EXPECT_LE(r.completeness_deviation, 1e-12);
}

TEST(VerifyBasis, StandardBasisIsOrthonormal) {
  const BasisReport r = verify_basis(OperatorBasis::standard(3));
  EXPECT_LE(r.orthonormality_deviation, 1e-12);
  EXPECT_LE(r.completeness_deviation, 1e-12);
}

TEST(Coherence, PauliIsFourierRouteNuOne) {
  for (std::uint64_t t = 0; t < 5; ++t) {
    auto rng = rng_for(51, t);
    const HermitianMatrix rho = random_low_rank(8, 1 + static_cast<Eigen::Index>(t % 3),
                                                SpectrumKind::kRandom, rng);
    const CoherenceReport rep = coherence(rho, OperatorBasis::pauli(3));
    EXPECT_EQ(rep.route, CoherenceRoute::kFourierNorm);
    EXPECT_NEAR(rep.nu, 1.0, 1e-12);
  }
}

TEST(Coherence, RankOneStandardTwoByTwo) {
  const HermitianMatrix rho(basis_vector_outer(2, 0, 0));
  const CoherenceReport rep = coherence(rho, OperatorBasis::hermitian_standard(2));
  EXPECT_EQ(rep.rank, 1);
  // max ||P_T w_a||^2 = 1 (e1e1 and the off-diagonal pair lie in T), so (n/2r) * 1 = 1
  EXPECT_NEAR(rep.pt_term, 1.0, 1e-12);
  // (e1e1, sign rho)^2 = 1, times n^2/r = 4
  EXPECT_NEAR(rep.sign_term, 4.0, 1e-12);
  EXPECT_NEAR(rep.nu_pt_sign(), 4.0, 1e-12);
  EXPECT_NEAR(rep.fourier_term, 2.0, 1e-12);
  EXPECT_NEAR(rep.nu, std::min(rep.fourier_term, rep.nu_pt_sign()), 1e-12);
}

TEST(Coherence, MatrixCompletionParameters) {
  const int n = 8;
  const OperatorBasis b = OperatorBasis::hermitian_standard(n);
  for (std::uint64_t t = 0; t < 5; ++t) {
    auto rng = rng_for(53, t);
    const Eigen::Index r = 1 + static_cast<Eigen::Index>(t % 2);
    const HermitianMatrix rho = random_low_rank(n, r, SpectrumKind::kFlat, rng);
    const TangentSpace ts(rho);
    const ComplexMatrix sg = matrix_sign(rho).matrix();
    double mu1 = 0.0, mu2 = 0.0;
    for (int i = 0; i < n; ++i) {
      mu1 = std::max(mu1, ts.range_projector().col(i).squaredNorm() * n / static_cast<double>(r));
      for (int j = 0; j < n; ++j)
        mu2 = std::max(mu2, std::abs(sg(i, j)) * n / std::sqrt(static_cast<double>(r)));
    }
    const CoherenceReport rep = coherence(rho, b);
    EXPECT_LE(rep.pt_term, mu1 + 1e-10);
    EXPECT_LE(rep.sign_term, 2.0 * mu2 * mu2 + 1e-10);
    EXPECT_LE(rep.nu_pt_sign(), std::max(mu1, 2.0 * mu2 * mu2) + 1e-10);
  }
}

TEST(Coherence, ZeroRhoRejected) {
  EXPECT_THROW(coherence(HermitianMatrix::zero(2), OperatorBasis::pauli(1)), InvalidInput);
}

TEST(Coherence, DetailFieldsMatchDirectComputation) {
  auto rng = rng_for(55);
  const HermitianMatrix rho = random_low_rank(4, 2, SpectrumKind::kRandom, rng);
  const OperatorBasis b = OperatorBasis::hermitian_standard(4);
  const TangentSpace ts(rho);
  const ComplexMatrix sg = matrix_sign(rho).matrix();
  double pt = 0.0, sg2 = 0.0, fb = 0.0;
  for (std::size_t a = 0; a < b.size(); ++a) {
    const ComplexMatrix w = b.dense(a);
    pt = std::max(pt, ts.project(w).squaredNorm());
    sg2 = std::max(sg2, std::norm(hs_inner(w, sg)));
    fb = std::max(fb, std::pow(operator_norm(w), 2));
  }
  const CoherenceReport rep = coherence(rho, b);
  EXPECT_NEAR(rep.pt_term, 4.0 / 4.0 * pt, 1e-10);
  EXPECT_NEAR(rep.sign_term, 16.0 / 2.0 * sg2, 1e-10);
  EXPECT_NEAR(rep.fourier_term, 4.0 * fb, 1e-10);
}

TEST(MuOverlap, BasisElementAndZero) {
  const OperatorBasis b = OperatorBasis::pauli(2);
  EXPECT_NEAR(mu_overlap(b.dense(5), b), 1.0, 1e-14);
  EXPECT_EQ(mu_overlap(ComplexMatrix::Zero(4, 4), b), 0.0);
}

TEST(MuOverlap, ProjectorOnPauliOne) {
  EXPECT_NEAR(mu_overlap(basis_vector_outer(2, 0, 0), OperatorBasis::pauli(1)), 0.5, 1e-15);
}

TEST(Properties, HolderChainAndNormFloor) {
  const OperatorBasis bases[] = {OperatorBasis::pauli(3), OperatorBasis::hermitian_standard(8)};
  for (const auto& b : bases) {
    const double nu = b.fourier_bound() * static_cast<double>(b.dim());
    EXPECT_GE(b.fourier_bound(), 1.0 / static_cast<double>(b.dim()) - 1e-10);
    for (std::uint64_t t = 0; t < 5; ++t) {
      auto rng = rng_for(57, t);
      const Eigen::Index r = 1 + static_cast<Eigen::Index>(t % 3);
      const TangentSpace ts(random_low_rank(8, r, SpectrumKind::kFlat, rng));
      for (double w : tangent_weights(ts, b))
        EXPECT_LE(w, 2.0 * nu * static_cast<double>(r) / 8.0 + 1e-10);
    }
  }
}

TEST(TangentWeights, MatchDenseProjection) {
  auto rng = rng_for(59);
  const TangentSpace ts(random_low_rank(4, 2, SpectrumKind::kRandom, rng));
  const OperatorBasis b = OperatorBasis::pauli(2);
  const auto w = tangent_weights(ts, b);
  for (std::size_t a = 0; a < b.size(); ++a)
    EXPECT_NEAR(w[a], ts.project(b.dense(a)).squaredNorm(), 1e-12);
}

TEST(NonHermitianCoherence, StandardBasisDetailFields) {
  auto rng = rng_for(61);
  const ComplexMatrix u = haar_isometry(4, 1, rng);
  const ComplexMatrix v = haar_isometry(4, 1, rng);
  const ComplexMatrix rho = u * v.adjoint();
  const OperatorBasis b = OperatorBasis::standard(4);
  const CoherenceReport rep = coherence_nonhermitian(rho, b);
  EXPECT_EQ(rep.rank, 1);
  EXPECT_NEAR(rep.fourier_term, 4.0 * 1.0 / 2.0, 1e-12);
  EXPECT_LE(rep.nu, rep.fourier_term + 1e-12);
}

}  // namespace
}  // namespace lrr
