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

#include <sstream>

#include "lrr/config.hpp"
#include "lrr/ensembles.hpp"
#include "lrr/error.hpp"
#include "lrr/io.hpp"
#include "test_util.hpp"

namespace lrr {
namespace {

using test::max_abs;
using test::rng_for;

TEST(Complex, FormatParseRoundTrip) {
  for (Complex z : {Complex(1.5, -2.0), Complex(-1e-300, 3e10), Complex(0.1, 0.0),
                    Complex(-0.0, -1.25e-7)}) {
    EXPECT_EQ(parse_complex(format_complex(z)), z);
  }
  EXPECT_EQ(parse_complex("2"), Complex(2.0, 0.0));
  EXPECT_EQ(parse_complex("1e-3-2.5e+2i"), Complex(1e-3, -250.0));
  EXPECT_THROW(parse_complex("1+xi"), InvalidInput);
  EXPECT_THROW(parse_complex(""), InvalidInput);
}

TEST(Matrix, RoundTripIsExact) {
  CounterRng rng = rng_for(1, 0);
  const ComplexMatrix m = gaussian_complex(3, 5, rng);
  std::stringstream ss;
  write_matrix(ss, m);
  const ComplexMatrix back = read_matrix(ss);
  ASSERT_EQ(back.rows(), 3);
  ASSERT_EQ(back.cols(), 5);
  EXPECT_EQ(max_abs(back - m), 0.0);
}

TEST(Matrix, RejectsRaggedRows) {
  std::istringstream in("matrix v1 rows=2 cols=2\n1 2\n3\n");
  EXPECT_THROW(read_matrix(in), InvalidInput);
  std::istringstream bad_header("matrix v2 rows=1 cols=1\n1\n");
  EXPECT_THROW(read_matrix(bad_header), InvalidInput);
}

TEST(Basis, CustomRoundTrip) {
  CounterRng rng = rng_for(2, 0);
  const ComplexMatrix u = haar_isometry(9, 9, rng);
  // Unitary mixtures of an orthonormal basis stay orthonormal (but not Hermitian).
  const OperatorBasis std3 = OperatorBasis::hermitian_standard(3);
  std::vector<ComplexMatrix> elems;
  for (int a = 0; a < 9; ++a) {
    ComplexMatrix acc = ComplexMatrix::Zero(3, 3);
    for (int c = 0; c < 9; ++c) acc += u(a, c) * std3.dense(static_cast<std::size_t>(c));
    elems.push_back(acc);
  }
  const OperatorBasis custom = OperatorBasis::custom(elems);
  std::stringstream ss;
  write_basis(ss, custom);
  const OperatorBasis back = read_basis(ss);
  ASSERT_EQ(back.dim(), 3);
  ASSERT_EQ(back.size(), 9u);
  for (std::size_t a = 0; a < 9; ++a) EXPECT_EQ(max_abs(back.dense(a) - elems[a]), 0.0);
}

TEST(Basis, RejectsWrongCountAndNonOrthonormal) {
  std::istringstream count("opbasis v1 n=1 count=2\nelement 1\n1\nelement 2\n1\n");
  EXPECT_THROW(read_basis(count), InvalidInput);
  std::istringstream scaled("opbasis v1 n=1 count=1\nelement 1\n2\n");
  EXPECT_THROW(read_basis(scaled), InvalidInput);
  std::istringstream ok("# a comment\nopbasis v1 n=1 count=1\nelement 1\n-1+0i\n");
  EXPECT_EQ(read_basis(ok).dense(0)(0, 0), Complex(-1.0, 0.0));
  std::istringstream index("opbasis v1 n=1 count=1\nelement 2\n1\n");
  EXPECT_THROW(read_basis(index), InvalidInput);
}

TEST(Omega, RoundTripKeepsMultiplicityAndStream) {
  const SampleSet s = draw_omega(4, 30, SamplingMode::kIid, StreamId{9, 3, 1});
  std::stringstream ss;
  write_omega(ss, s);
  const SampleSet back = read_omega(ss);
  EXPECT_EQ(back.n, 4);
  EXPECT_EQ(back.indices, s.indices);
  EXPECT_EQ(back.mode, s.mode);
  EXPECT_EQ(back.stream.seed, 9u);
}

TEST(Omega, OneBasedOnDisk) {
  std::istringstream in("omega v1 n=2 m=3 mode=iid seed=5\n1 4 4\n");
  const SampleSet s = read_omega(in);
  EXPECT_EQ(s.indices, (std::vector<std::size_t>{0, 3, 3}));
  std::istringstream zero("omega v1 n=2 m=1 mode=iid seed=5\n0\n");
  EXPECT_THROW(read_omega(zero), InvalidInput);
  std::istringstream high("omega v1 n=2 m=1 mode=iid seed=5\n5\n");
  EXPECT_THROW(read_omega(high), InvalidInput);
  std::istringstream dup("omega v1 n=2 m=2 mode=without-replacement seed=5\n2 2\n");
  EXPECT_THROW(read_omega(dup), InvalidInput);
  std::istringstream short_list("omega v1 n=2 m=3 mode=iid seed=5\n1 2\n");
  EXPECT_THROW(read_omega(short_list), InvalidInput);
}

TEST(Problem, RoundTripAllBuiltInKinds) {
  CounterRng rng = rng_for(3, 0);
  const HermitianMatrix rho = random_low_rank(4, 1, SpectrumKind::kFlat, rng);
  for (const OperatorBasis& basis :
       {OperatorBasis::hermitian_standard(4), OperatorBasis::pauli(2)}) {
    const RecoveryProblem p = RecoveryProblem::from_matrix(rho, basis, {0, 5, 5, 11, 15});
    std::stringstream ss;
    write_problem(ss, p);
    const RecoveryProblem back = read_problem(ss);
    EXPECT_EQ(back.basis().kind(), basis.kind());
    EXPECT_EQ(back.indices(), p.indices());
    EXPECT_EQ(back.coefficients(), p.coefficients());
  }
}

TEST(Problem, CustomBasisMustBeSupplied) {
  const OperatorBasis custom = OperatorBasis::custom({ComplexMatrix::Identity(1, 1)});
  const RecoveryProblem p =
      RecoveryProblem::from_samples(custom, {0}, {0.5});
  std::stringstream ss;
  write_problem(ss, p);
  const std::string text = ss.str();
  std::istringstream without(text);
  EXPECT_THROW(read_problem(without), InvalidInput);
  std::istringstream with(text);
  EXPECT_EQ(read_problem(with, &custom).coefficients(), std::vector<double>{0.5});
}

TEST(Problem, InconsistentDuplicatesRejected) {
  std::istringstream in("problem v1 n=2 basis=pauli m=2\n1 0.5\n1 0.25\n");
  EXPECT_THROW(read_problem(in), InvalidInput);
  std::istringstream pauli3("problem v1 n=3 basis=pauli m=1\n1 0.5\n");
  EXPECT_THROW(read_problem(pauli3), InvalidInput);
}

TEST(Files, MissingFileIsIOError) {
  EXPECT_THROW(load_matrix("/nonexistent/matrix.txt"), IOError);
  EXPECT_THROW(ConfigFile::load("/nonexistent/run.cfg"), IOError);
}

TEST(Config, ParsesTypedValues) {
  const ConfigFile c = ConfigFile::parse(
      "# phase run\n n = 16 \nm_over_nr=2, 4,6\nseed=18446744073709551615\n"
      "threshold=1e-4 # inline\nmodes=iid,without-replacement\nflag=true\n");
  EXPECT_EQ(c.get_int("n", 0), 16);
  EXPECT_EQ(c.get_int_list("m_over_nr", {}), (std::vector<long long>{2, 4, 6}));
  EXPECT_EQ(c.get_u64("seed", 0), 18446744073709551615ull);
  EXPECT_DOUBLE_EQ(c.get_double("threshold", 0), 1e-4);
  EXPECT_EQ(c.get_list("modes", {}), (std::vector<std::string>{"iid", "without-replacement"}));
  EXPECT_TRUE(c.get_bool("flag", false));
  EXPECT_EQ(c.get_int("absent", 7), 7);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(ConfigFile::parse("n=1\nn=2\n"), InvalidInput);
  EXPECT_THROW(ConfigFile::parse("just a line\n"), InvalidInput);
  EXPECT_THROW(ConfigFile::parse("=3\n"), InvalidInput);
  const ConfigFile c = ConfigFile::parse("n=abc\nflag=maybe\n");
  EXPECT_THROW(c.get_int("n", 0), InvalidInput);
  EXPECT_THROW(c.get_bool("flag", false), InvalidInput);
}

TEST(Config, UnknownKeyNamed) {
  const ConfigFile c = ConfigFile::parse("n=4\ntrails=10\n");
  try {
    c.require_known({"n", "trials"});
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("trails"), std::string::npos);
  }
}

}  // namespace
}  // namespace lrr
