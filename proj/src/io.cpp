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

#include "lrr/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace lrr {

namespace {

// Next line that is neither blank nor a comment.
bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

std::map<std::string, std::string> parse_header(const std::string& line,
                                                const std::string& magic) {
  std::istringstream ss(line);
  std::string word, version;
  ss >> word >> version;
  if (word != magic || version != "v1")
    throw InvalidInput("expected '" + magic + " v1' header, got '" + line + "'");
  std::map<std::string, std::string> fields;
  std::string kv;
  while (ss >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidInput("malformed header field '" + kv + "'");
    fields[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return fields;
}

const std::string& field(const std::map<std::string, std::string>& f,
                         const std::string& key) {
  const auto it = f.find(key);
  if (it == f.end()) throw InvalidInput("header is missing '" + key + "'");
  return it->second;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidInput("invalid " + what + " '" + s + "'");
  return v;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput("invalid " + what + " '" + s + "'");
  }
  if (used != s.size()) throw InvalidInput("invalid " + what + " '" + s + "'");
  return v;
}

std::size_t parse_index(const std::string& s, std::size_t limit) {
  const auto a = parse_u64(s, "index");
  if (a < 1 || a > limit) throw InvalidInput("index " + s + " out of range");
  return static_cast<std::size_t>(a - 1);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string format_complex(Complex z) {
  std::ostringstream ss;
  ss << std::setprecision(17) << z.real() << (std::signbit(z.imag()) ? "" : "+")
     << z.imag() << 'i';
  return ss.str();
}

Complex parse_complex(const std::string& token) {
  if (token.empty() || token.back() != 'i') {
    return {parse_double(token, "complex entry"), 0.0};
  }
  // Split at the sign that starts the imaginary part (not an exponent sign).
  const std::string body = token.substr(0, token.size() - 1);
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      return {parse_double(body.substr(0, i), "complex entry"),
              parse_double(body.substr(i), "complex entry")};
    }
  }
  return {0.0, parse_double(body, "complex entry")};
}

void write_basis(std::ostream& os, const OperatorBasis& basis) {
  const Eigen::Index n = basis.dim();
  os << "opbasis v1 n=" << n << " count=" << basis.size() << '\n';
  for (std::size_t a = 0; a < basis.size(); ++a) {
    os << "element " << a + 1 << '\n';
    const ComplexMatrix m = basis.dense(a);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) os << (j ? " " : "") << format_complex(m(i, j));
      os << '\n';
    }
  }
}

OperatorBasis read_basis(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw InvalidInput("empty basis file");
  const auto f = parse_header(line, "opbasis");
  const auto n = static_cast<Eigen::Index>(parse_u64(field(f, "n"), "n"));
  const auto count = parse_u64(field(f, "count"), "count");
  if (n < 1) throw InvalidInput("basis file: n must be >= 1");
  if (count != static_cast<std::uint64_t>(n * n))
    throw InvalidInput("basis file: count must equal n^2");
  std::vector<ComplexMatrix> elements(count);
  std::vector<bool> seen(count, false);
  for (std::uint64_t e = 0; e < count; ++e) {
    if (!next_line(is, line)) throw InvalidInput("basis file: truncated");
    std::istringstream hs(line);
    std::string word, idx;
    hs >> word >> idx;
    if (word != "element") throw InvalidInput("basis file: expected 'element <a>'");
    const std::size_t a = parse_index(idx, count);
    if (seen[a]) throw InvalidInput("basis file: element " + idx + " repeated");
    seen[a] = true;
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!next_line(is, line)) throw InvalidInput("basis file: truncated element");
      std::istringstream rs(line);
      std::string tok;
      Eigen::Index j = 0;
      while (rs >> tok) {
        if (j >= n) throw InvalidInput("basis file: too many entries in a row");
        m(i, j++) = parse_complex(tok);
      }
      if (j != n) throw InvalidInput("basis file: too few entries in a row");
    }
    elements[a] = std::move(m);
  }
  OperatorBasis basis = OperatorBasis::custom(std::move(elements));
  const BasisReport rep = verify_basis(basis);
  if (!rep.ok(1e-8))
    throw InvalidInput("basis file: elements are not an orthonormal basis (deviation " +
                       std::to_string(std::max(rep.orthonormality_deviation,
                                               rep.completeness_deviation)) + ")");
  return basis;
}

void write_matrix(std::ostream& os, const ComplexMatrix& m) {
  os << "matrix v1 rows=" << m.rows() << " cols=" << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << format_complex(m(i, j));
    os << '\n';
  }
}

ComplexMatrix read_matrix(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw InvalidInput("empty matrix file");
  const auto f = parse_header(line, "matrix");
  const auto rows = static_cast<Eigen::Index>(parse_u64(field(f, "rows"), "rows"));
  const auto cols = static_cast<Eigen::Index>(parse_u64(field(f, "cols"), "cols"));
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!next_line(is, line)) throw InvalidInput("matrix file: truncated");
    std::istringstream rs(line);
    std::string tok;
    Eigen::Index j = 0;
    while (rs >> tok) {
      if (j >= cols) throw InvalidInput("matrix file: too many entries in a row");
      m(i, j++) = parse_complex(tok);
    }
    if (j != cols) throw InvalidInput("matrix file: too few entries in a row");
  }
  return m;
}

void write_omega(std::ostream& os, const SampleSet& omega) {
  os << "omega v1 n=" << omega.n << " m=" << omega.size()
     << " mode=" << to_string(omega.mode) << " seed=" << omega.stream.seed << '\n';
  for (std::size_t i = 0; i < omega.size(); ++i)
    os << omega.indices[i] + 1 << ((i + 1) % 20 == 0 || i + 1 == omega.size() ? '\n' : ' ');
}

SampleSet read_omega(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw InvalidInput("empty omega file");
  const auto f = parse_header(line, "omega");
  SampleSet s;
  s.n = static_cast<Eigen::Index>(parse_u64(field(f, "n"), "n"));
  const auto m = parse_u64(field(f, "m"), "m");
  s.mode = sampling_mode_from_string(field(f, "mode"));
  s.stream.seed = parse_u64(field(f, "seed"), "seed");
  const auto limit = static_cast<std::size_t>(s.n * s.n);
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') {
      std::getline(is, tok);
      continue;
    }
    s.indices.push_back(parse_index(tok, limit));
  }
  if (s.indices.size() != m) throw InvalidInput("omega file: index count differs from m");
  if (s.mode == SamplingMode::kWithoutReplacement &&
      deduplicate(s.indices).size() != s.indices.size())
    throw InvalidInput("omega file: repeated index without replacement");
  return s;
}

void write_problem(std::ostream& os, const RecoveryProblem& problem) {
  os << "problem v1 n=" << problem.dim() << " basis=" << to_string(problem.basis().kind())
     << " m=" << problem.size() << '\n';
  os << std::setprecision(17);
  for (std::size_t i = 0; i < problem.size(); ++i)
    os << problem.indices()[i] + 1 << ' ' << problem.coefficients()[i] << '\n';
}

RecoveryProblem read_problem(std::istream& is, const OperatorBasis* custom) {
  std::string line;
  if (!next_line(is, line)) throw InvalidInput("empty problem file");
  const auto f = parse_header(line, "problem");
  const auto n = static_cast<int>(parse_u64(field(f, "n"), "n"));
  const auto m = parse_u64(field(f, "m"), "m");
  const BasisKind kind = basis_kind_from_string(field(f, "basis"));
  std::optional<OperatorBasis> basis;
  switch (kind) {
    case BasisKind::kHermitianStandard: basis = OperatorBasis::hermitian_standard(n); break;
    case BasisKind::kStandard: basis = OperatorBasis::standard(n); break;
    case BasisKind::kPauli: {
      const int k = std::countr_zero(static_cast<unsigned>(n));
      if (n < 2 || (1 << k) != n) throw InvalidInput("problem file: Pauli basis needs n = 2^k");
      basis = OperatorBasis::pauli(k);
      break;
    }
    case BasisKind::kCustom:
      if (custom == nullptr) throw InvalidInput("problem file: custom basis not supplied");
      if (custom->dim() != n) throw InvalidInput("problem file: custom basis dim mismatch");
      basis = *custom;
      break;
  }
  std::vector<std::size_t> idx;
  std::vector<double> coef;
  while (next_line(is, line)) {
    std::istringstream ls(line);
    std::string a, c, extra;
    if (!(ls >> a >> c) || (ls >> extra))
      throw InvalidInput("problem file: expected '<index> <coefficient>'");
    idx.push_back(parse_index(a, basis->size()));
    coef.push_back(parse_double(c, "coefficient"));
  }
  if (idx.size() != m) throw InvalidInput("problem file: line count differs from m");
  return RecoveryProblem::from_samples(*basis, idx, coef);
}

OperatorBasis load_basis(const std::string& path) {
  auto in = open_input(path);
  return read_basis(in);
}

ComplexMatrix load_matrix(const std::string& path) {
  auto in = open_input(path);
  return read_matrix(in);
}

RecoveryProblem load_problem(const std::string& path, const OperatorBasis* custom) {
  auto in = open_input(path);
  return read_problem(in, custom);
}

}  // namespace lrr
