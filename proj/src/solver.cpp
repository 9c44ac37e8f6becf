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

#include "lrr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lrr/ensembles.hpp"
#include "lrr/rng.hpp"

namespace lrr {

namespace {

constexpr double kDuplicateTol = 1e-9;
constexpr double kInvSqrt2 = 0.70710678118654752440;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double constraint_residual(const ComplexMatrix& x,
                           const std::vector<BasisElement>& elements,
                           const std::vector<double>& coefficients) {
  double worst = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i)
    worst = std::max(worst, std::abs(elements[i].inner(x).real() - coefficients[i]));
  return worst;
}

// Eigenvalue soft-thresholding; also returns the shrunk part A - X.
void shrink(const ComplexMatrix& a, double tau, ComplexMatrix& x, ComplexMatrix& rest) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  if (es.info() != Eigen::Success) throw InvalidInput("eigensolver failed");
  const RealVector& l = es.eigenvalues();
  RealVector kept(l.size()), cut(l.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    const double s = std::max(std::abs(l(i)) - tau, 0.0);
    kept(i) = l(i) >= 0 ? s : -s;
    cut(i) = l(i) - kept(i);
  }
  const ComplexMatrix& v = es.eigenvectors();
  x.noalias() = v * kept.cast<Complex>().asDiagonal() * v.adjoint();
  rest.noalias() = v * cut.cast<Complex>().asDiagonal() * v.adjoint();
}

}  // namespace

RecoveryProblem::RecoveryProblem(OperatorBasis basis, std::vector<std::size_t> indices,
                                 std::vector<double> coefficients)
    : basis_(std::move(basis)),
      indices_(std::move(indices)),
      coefficients_(std::move(coefficients)) {}

RecoveryProblem RecoveryProblem::from_matrix(const HermitianMatrix& rho,
                                             const OperatorBasis& basis,
                                             const std::vector<std::size_t>& omega) {
  if (rho.dim() != basis.dim()) throw InvalidInput("problem: dim mismatch");
  std::vector<std::size_t> idx = deduplicate(omega);
  std::vector<double> coef;
  coef.reserve(idx.size());
  for (auto a : idx) coef.push_back(basis.coefficient(a, rho.matrix()).real());
  return RecoveryProblem(basis, std::move(idx), std::move(coef));
}

RecoveryProblem RecoveryProblem::from_samples(const OperatorBasis& basis,
                                              const std::vector<std::size_t>& indices,
                                              const std::vector<double>& coefficients) {
  if (indices.size() != coefficients.size())
    throw InvalidInput("problem: index and coefficient counts differ");
  std::map<std::size_t, double> seen;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= basis.size()) throw InvalidInput("problem: index out of range");
    if (!std::isfinite(coefficients[i]))
      throw InvalidInput("problem: non-finite coefficient");
    auto [it, inserted] = seen.emplace(indices[i], coefficients[i]);
    if (!inserted && std::abs(it->second - coefficients[i]) > kDuplicateTol)
      throw InvalidInput("problem: inconsistent duplicate coefficient for index " +
                         std::to_string(indices[i] + 1));
  }
  std::vector<std::size_t> idx;
  std::vector<double> coef;
  for (const auto& [a, c] : seen) {
    idx.push_back(a);
    coef.push_back(c);
  }
  return RecoveryProblem(basis, std::move(idx), std::move(coef));
}

void SolverConfig::validate() const {
  if (max_iterations < 1) throw InvalidInput("solver: max_iterations must be >= 1");
  if (!(penalty > 0.0)) throw InvalidInput("solver: penalty must be > 0");
  if (!(eps_primal > 0.0) || !(eps_dual > 0.0))
    throw InvalidInput("solver: tolerances must be > 0");
  if (zero_tol < 0.0) throw InvalidInput("solver: zero_tol must be >= 0");
}

RecoveryResult recover_elements(Eigen::Index n,
                                const std::vector<BasisElement>& elements,
                                const std::vector<double>& coefficients,
                                const SolverConfig& cfg) {
  cfg.validate();
  if (elements.empty()) throw InvalidInput("recover: no constraints");
  if (elements.size() != coefficients.size())
    throw InvalidInput("recover: coefficient count mismatch");

  const double cscale = 1.0 + max_abs(coefficients);
  double rho = cfg.penalty;

  ComplexMatrix z = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < elements.size(); ++i) elements[i].add_to(z, coefficients[i]);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  ComplexMatrix x(n, n), cut(n, n), v(n, n), z_next(n, n);
  std::vector<double> d(elements.size());

  RecoveryResult res;
  for (int k = 1; k <= cfg.max_iterations; ++k) {
    shrink(z - u, 1.0 / rho, x, cut);
    v = x + u;
    z_next = v;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      d[i] = elements[i].inner(v).real() - coefficients[i];
      elements[i].add_to(z_next, -d[i]);
    }
    u = v - z_next;
    const double rp = (x - z_next).norm();
    const double rd = rho * (z_next - z).norm();
    z.swap(z_next);

    res.iterations = k;
    res.primal_residual = rp;
    res.dual_residual = rd;
    const bool last = k == cfg.max_iterations;
    if ((rp <= cfg.eps_primal * std::max(1.0, x.norm()) && rd <= cfg.eps_dual) || last) {
      res.constraint_residual = constraint_residual(x, elements, coefficients);
      res.converged = !last || (rp <= cfg.eps_primal * std::max(1.0, x.norm()) &&
                                rd <= cfg.eps_dual);
      res.converged = res.converged && res.constraint_residual <= cfg.eps_primal * cscale;
      if (res.converged || last) {
        res.sigma = HermitianMatrix::trusted(x);
        res.subgradient = HermitianMatrix::trusted(rho * cut);
        res.multipliers.resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) res.multipliers[i] = -rho * d[i];
        break;
      }
    }
    if (cfg.adaptive_penalty && k % 10 == 0) {
      double factor = 1.0;
      if (rp > 10.0 * rd) factor = 2.0;
      else if (rd > 10.0 * rp) factor = 0.5;
      if (factor != 1.0) {
        rho *= factor;
        u /= factor;
      }
    }
  }
  return res;
}

RecoveryResult recover(const RecoveryProblem& problem, const SolverConfig& cfg) {
  if (!problem.basis().hermitian())
    throw InvalidInput("recover: basis is not Hermitian; use recover_nonhermitian");
  std::vector<BasisElement> elements;
  elements.reserve(problem.size());
  for (auto a : problem.indices()) elements.push_back(problem.basis().element(a));
  return recover_elements(problem.dim(), elements, problem.coefficients(), cfg);
}

RecoveryDiagnostics diagnose(const HermitianMatrix& sigma, const HermitianMatrix& rho,
                             double zero_tol) {
  if (sigma.dim() != rho.dim()) throw InvalidInput("diagnose: dim mismatch");
  const ComplexMatrix delta = sigma.matrix() - rho.matrix();
  const TangentSpace t(rho, zero_tol);
  RecoveryDiagnostics d;
  const double scale = rho.matrix().norm();
  d.relative_error = delta.norm() / (scale > 0.0 ? scale : 1.0);
  d.delta_t_norm = t.project(delta).norm();
  d.delta_tperp_norm = t.project_complement(delta).norm();
  return d;
}

BasisElement lifted_element(const OperatorBasis& basis, std::size_t index) {
  const std::size_t nn = basis.size();
  if (index >= 4 * nn) throw InvalidInput("lifted_element: index out of range");
  const std::size_t family = index / nn;
  const BasisElement w = basis.element(index % nn);
  const Eigen::Index n = basis.dim();
  const Complex phase = (family == 1 || family == 3) ? Complex(0.0, 1.0) : Complex(1.0);
  BasisElement out;
  out.dim = 2 * n;
  for (const auto& e : w.entries) {
    const Complex v = phase * e.value * kInvSqrt2;
    if (family < 2) {
      out.entries.push_back({e.row, n + e.col, v});
      out.entries.push_back({n + e.col, e.row, std::conj(v)});
    } else {
      out.entries.push_back({e.row, e.col, v});
      out.entries.push_back({n + e.col, n + e.row, std::conj(v)});
    }
  }
  return out;
}

NonHermitianResult recover_nonhermitian(const OperatorBasis& basis,
                                        const std::vector<std::size_t>& omega,
                                        const std::vector<Complex>& coefficients,
                                        const SolverConfig& cfg) {
  if (omega.size() != coefficients.size())
    throw InvalidInput("recover_nonhermitian: index and coefficient counts differ");
  std::map<std::size_t, Complex> seen;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (omega[i] >= basis.size())
      throw InvalidInput("recover_nonhermitian: index out of range");
    auto [it, inserted] = seen.emplace(omega[i], coefficients[i]);
    if (!inserted && std::abs(it->second - coefficients[i]) > kDuplicateTol)
      throw InvalidInput("recover_nonhermitian: inconsistent duplicate coefficient");
  }
  const std::size_t nn = basis.size();
  std::vector<BasisElement> elements;
  std::vector<double> lifted;
  for (const auto& [a, c] : seen) {
    elements.push_back(lifted_element(basis, a));
    lifted.push_back(c.real());
    elements.push_back(lifted_element(basis, nn + a));
    lifted.push_back(c.imag());
  }
  NonHermitianResult out;
  out.lifted = recover_elements(2 * basis.dim(), elements, lifted, cfg);
  const Eigen::Index n = basis.dim();
  out.estimate = std::sqrt(2.0) * out.lifted.sigma.matrix().topRightCorner(n, n);
  return out;
}

NonHermitianResult recover_nonhermitian(const ComplexMatrix& rho,
                                        const OperatorBasis& basis,
                                        const std::vector<std::size_t>& omega,
                                        const SolverConfig& cfg) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim())
    throw InvalidInput("recover_nonhermitian: dim mismatch");
  const std::vector<std::size_t> idx = deduplicate(omega);
  std::vector<Complex> coef;
  for (auto a : idx) coef.push_back(basis.coefficient(a, rho));
  NonHermitianResult out = recover_nonhermitian(basis, idx, coef, cfg);
  const double scale = rho.norm();
  out.relative_error = (out.estimate - rho).norm() / (scale > 0.0 ? scale : 1.0);
  return out;
}

UniquenessReport uniqueness_probe(const RecoveryProblem& problem,
                                  const HermitianMatrix& sigma, int trials,
                                  std::uint64_t seed, double zero_tol) {
  const Eigen::Index n = problem.dim();
  if (sigma.dim() != n) throw InvalidInput("uniqueness_probe: dim mismatch");
  UniquenessReport rep;
  rep.kernel_dim = problem.basis().size() - problem.size();
  const double base = nuclear_norm(sigma.matrix());
  rep.threshold = 1e-10 * std::max(1.0, base);
  if (rep.kernel_dim == 0 || trials <= 0) {
    rep.likely_unique = true;
    return rep;
  }
  std::vector<BasisElement> elements;
  for (auto a : problem.indices()) elements.push_back(problem.basis().element(a));
  auto project_kernel = [&](ComplexMatrix m) {
    for (const auto& e : elements) e.add_to(m, -e.inner(m).real());
    return m;
  };
  // Face of sigma: U+ H+ U+^dag + U- H- U-^dag with U+/- its positive and
  // negative eigenspaces. Face directions that keep every constraint and
  // tr(sign(sigma) .) fixed leave the nuclear norm unchanged.
  const double face_tol = std::max(zero_tol, 1e-6);
  const Spectrum eig = eig_hermitian(sigma, face_tol);
  const double top = eig.eigenvalues.size() ? eig.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  std::vector<ComplexMatrix> face_basis;
  for (int sgn : {1, -1}) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < n; ++i)
      if (sgn * eig.eigenvalues(i) > face_tol * top) cols.push_back(i);
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = i; j < cols.size(); ++j) {
        const auto u = eig.eigenvectors.col(cols[i]);
        const auto v = eig.eigenvectors.col(cols[j]);
        if (i == j) {
          face_basis.push_back(u * u.adjoint());
          continue;
        }
        const ComplexMatrix x = u * v.adjoint();
        face_basis.push_back((x + x.adjoint()) / std::sqrt(2.0));
        face_basis.push_back(Complex(0.0, 1.0) * (x - x.adjoint()) / std::sqrt(2.0));
      }
  }
  RealMatrix face_null;
  if (!face_basis.empty()) {
    const ComplexMatrix sign = matrix_sign(sigma, face_tol).matrix();
    RealMatrix map(static_cast<Eigen::Index>(elements.size()) + 1,
                   static_cast<Eigen::Index>(face_basis.size()));
    for (std::size_t j = 0; j < face_basis.size(); ++j) {
      for (std::size_t i = 0; i < elements.size(); ++i)
        map(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            elements[i].inner(face_basis[j]).real();
      map(map.rows() - 1, static_cast<Eigen::Index>(j)) = hs_inner(sign, face_basis[j]).real();
    }
    Eigen::FullPivLU<RealMatrix> lu(map);
    lu.setThreshold(1e-10);
    face_null = lu.kernel();
    if (lu.dimensionOfKernel() == 0) face_null.resize(0, 0);
  }
  CounterRng rng(StreamId{seed, 0, 0});

  rep.min_increment = INFINITY;
  for (int t = 0; t < trials; ++t) {
    ComplexMatrix dir;
    if (t % 2 == 1 && face_null.cols() > 0) {
      dir = ComplexMatrix::Zero(n, n);
      for (Eigen::Index c = 0; c < face_null.cols(); ++c) {
        const double g = 2.0 * rng.uniform() - 1.0;
        for (std::size_t j = 0; j < face_basis.size(); ++j)
          dir += g * face_null(static_cast<Eigen::Index>(j), c) * face_basis[j];
      }
    } else {
      dir = project_kernel(random_hermitian(n, rng).matrix());
    }
    const double len = dir.norm();
    if (len == 0.0) continue;  // direction fully constrained
    dir /= len;
    double inc = INFINITY;
    for (double h : {1e-3, 1e-2}) {
      const ComplexMatrix moved = sigma.matrix() + h * dir;
      inc = std::min(inc, nuclear_norm(moved) - base);
    }
    rep.increments.push_back(inc);
    rep.min_increment = std::min(rep.min_increment, inc);
  }
  if (rep.increments.empty()) rep.min_increment = 0.0;
  rep.likely_unique = std::all_of(rep.increments.begin(), rep.increments.end(),
                                  [&](double x) { return x > rep.threshold; });
  return rep;
}

OptimalityCheck check_optimality(const RecoveryProblem& problem,
                                 const RecoveryResult& result, double zero_tol) {
  if (result.multipliers.size() != problem.size())
    throw InvalidInput("check_optimality: multiplier count mismatch");
  const Eigen::Index n = problem.dim();
  ComplexMatrix span = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < problem.size(); ++i)
    problem.basis().element(problem.indices()[i]).add_to(span, result.multipliers[i]);
  const ComplexMatrix& g = result.subgradient.matrix();
  const TangentSpace t(result.sigma, zero_tol);
  const auto sign = matrix_sign(result.sigma, zero_tol);
  OptimalityCheck c;
  c.multiplier_gap = (span - g).norm();
  c.tangent_gap = (t.project(g) - sign.matrix()).norm();
  c.complement_norm = hermitian_operator_norm(t.project_complement(g));
  return c;
}

}  // namespace lrr
