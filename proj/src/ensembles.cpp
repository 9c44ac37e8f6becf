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

#include "lrr/ensembles.hpp"

#include <cmath>
#include <random>

namespace lrr {

std::string to_string(SpectrumKind kind) {
  return kind == SpectrumKind::kFlat ? "flat" : "random";
}

SpectrumKind spectrum_kind_from_string(const std::string& s) {
  if (s == "flat") return SpectrumKind::kFlat;
  if (s == "random") return SpectrumKind::kRandom;
  throw InvalidInput("unknown spectrum '" + s + "'");
}

ComplexMatrix gaussian_complex(Eigen::Index rows, Eigen::Index cols, CounterRng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      g(i, j) = Complex(re, normal(rng));
    }
  return g;
}

HermitianMatrix random_hermitian(Eigen::Index n, CounterRng& rng) {
  const ComplexMatrix g = gaussian_complex(n, n, rng);
  return HermitianMatrix::trusted(0.5 * (g + g.adjoint()));
}

ComplexMatrix haar_isometry(Eigen::Index n, Eigen::Index r, CounterRng& rng) {
  if (r < 0 || r > n) throw InvalidInput("haar_isometry: need 0 <= r <= n");
  const ComplexMatrix g = gaussian_complex(n, r, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, r);
  const ComplexMatrix rfac = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  // Fix the phases so the distribution is Haar rather than QR-biased.
  for (Eigen::Index j = 0; j < r; ++j) {
    const Complex d = rfac(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

HermitianMatrix random_low_rank(Eigen::Index n, Eigen::Index r, SpectrumKind spectrum,
                                CounterRng& rng) {
  if (r < 1 || r > n) throw InvalidInput("random_low_rank: need 1 <= r <= n");
  const ComplexMatrix u = haar_isometry(n, r, rng);
  RealVector lambda(r);
  if (spectrum == SpectrumKind::kFlat) {
    lambda.setConstant(1.0);
  } else {
    for (Eigen::Index i = 0; i < r; ++i) lambda(i) = 0.2 + 0.8 * rng.uniform();
  }
  lambda /= lambda.norm();
  return HermitianMatrix::trusted(u * lambda.cast<Complex>().asDiagonal() * u.adjoint());
}

}  // namespace lrr
