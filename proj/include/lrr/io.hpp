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

#ifndef LRR_IO_HPP_
#define LRR_IO_HPP_

// Text formats. Every index is 1-based on disk and 0-based in memory.
//
//   opbasis v1 n=<n> count=<n^2>
//   element <a>
//   <n lines of n entries "re+imi">
//
//   omega v1 n=<n> m=<m> mode=<iid|without-replacement> seed=<seed>
//   <m whitespace-separated indices>
//
//   problem v1 n=<n> basis=<kind> m=<m>
//   <index> <coefficient>        (m lines)
//
//   matrix v1 rows=<r> cols=<c>
//   <r lines of c entries "re+imi">
//
// Lines starting with '#' are comments.

#include <iosfwd>
#include <string>

#include "lrr/bases.hpp"
#include "lrr/sampling.hpp"
#include "lrr/solver.hpp"

namespace lrr {

/// "re+imi" with 17 significant digits.
std::string format_complex(Complex z);
Complex parse_complex(const std::string& token);

void write_basis(std::ostream& os, const OperatorBasis& basis);
/// Parses and validates a custom basis; rejects count != n^2 and bases that
/// fail verify_basis at 1e-8.
OperatorBasis read_basis(std::istream& is);

void write_matrix(std::ostream& os, const ComplexMatrix& m);
ComplexMatrix read_matrix(std::istream& is);
ComplexMatrix load_matrix(const std::string& path);

void write_omega(std::ostream& os, const SampleSet& omega);
SampleSet read_omega(std::istream& is);

void write_problem(std::ostream& os, const RecoveryProblem& problem);
/// Built-in basis kinds are regenerated from the header; a custom basis must
/// be supplied.
RecoveryProblem read_problem(std::istream& is, const OperatorBasis* custom = nullptr);

OperatorBasis load_basis(const std::string& path);
RecoveryProblem load_problem(const std::string& path, const OperatorBasis* custom = nullptr);

}  // namespace lrr

#endif  // LRR_IO_HPP_
