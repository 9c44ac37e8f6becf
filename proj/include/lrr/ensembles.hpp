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

#ifndef LRR_ENSEMBLES_HPP_
#define LRR_ENSEMBLES_HPP_

#include <string>

#include "lrr/matcore.hpp"
#include "lrr/rng.hpp"

namespace lrr {

enum class SpectrumKind { kFlat, kRandom };

std::string to_string(SpectrumKind kind);
SpectrumKind spectrum_kind_from_string(const std::string& s);

/// Entries i.i.d. complex Gaussian with E|z|^2 = 1.
ComplexMatrix gaussian_complex(Eigen::Index rows, Eigen::Index cols, CounterRng& rng);

/// (G + G^dag)/2 for a complex Gaussian G.
HermitianMatrix random_hermitian(Eigen::Index n, CounterRng& rng);

/// n x r matrix with Haar-distributed orthonormal columns.
ComplexMatrix haar_isometry(Eigen::Index n, Eigen::Index r, CounterRng& rng);

/// U diag(lambda) U^dag with Haar U and ||rho||_2 = 1. Flat spectrum puts
/// every eigenvalue at 1/sqrt(r); random draws uniform(0.2, 1) and
/// renormalizes.
HermitianMatrix random_low_rank(Eigen::Index n, Eigen::Index r, SpectrumKind spectrum,
                                CounterRng& rng);

}  // namespace lrr

#endif  // LRR_ENSEMBLES_HPP_
