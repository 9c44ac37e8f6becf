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

#ifndef LRR_MATCORE_HPP_
#define LRR_MATCORE_HPP_

// Dense complex/Hermitian matrix kernel. Everything here is templated on the
// real scalar type; the rest of the library instantiates it with double.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "lrr/error.hpp"

namespace lrr {

template <typename Real>
using ComplexMatrixT =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RealVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = ComplexMatrixT<double>;
using RealVector = RealVectorT<double>;
using RealMatrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

inline constexpr double kDefaultZeroTol = 1e-10;

/// Hilbert-Schmidt inner product (A, B) = tr(A^dagger B).
template <typename DA, typename DB>
auto hs_inner(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return (a.conjugate().cwiseProduct(b)).sum();
}

/// Real part of the Hilbert-Schmidt inner product; exact for Hermitian pairs.
template <typename DA, typename DB>
auto hs_inner_real(const Eigen::MatrixBase<DA>& a,
                   const Eigen::MatrixBase<DB>& b) {
  return (a.real().cwiseProduct(b.real()) + a.imag().cwiseProduct(b.imag()))
      .sum();
}

/// Complex Hermitian matrix whose Hermiticity was checked on construction.
///
/// Inputs whose asymmetry max|A - A^dagger| is at most 1e-12 (relative to
/// max(1, max|A_ij|)) are symmetrized to (A + A^dagger)/2; anything larger is
/// rejected with InvalidInput.
template <typename Real>
class BasicHermitian {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = ComplexMatrixT<Real>;

  static constexpr Real kAsymmetryTol = Real(1e-12);

  BasicHermitian() = default;

  template <typename Derived>
  explicit BasicHermitian(const Eigen::MatrixBase<Derived>& a) : m_(a) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw InvalidInput("Hermitian matrix must be square with dim >= 1");
    }
    if (!m_.allFinite()) {
      throw InvalidInput("Hermitian matrix has non-finite entries");
    }
    const Real scale = std::max(Real(1), m_.cwiseAbs().maxCoeff());
    const Real asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kAsymmetryTol * scale) {
      throw InvalidInput("matrix is not Hermitian (asymmetry " +
                         std::to_string(static_cast<double>(asym)) + ")");
    }
    symmetrize();
  }

  /// Wraps a matrix produced by library code that is Hermitian up to
  /// rounding. Symmetrizes without checking.
  template <typename Derived>
  static BasicHermitian trusted(const Eigen::MatrixBase<Derived>& a) {
    BasicHermitian h;
    h.m_ = a;
    h.symmetrize();
    return h;
  }

  static BasicHermitian zero(Eigen::Index n) {
    return trusted(Matrix::Zero(n, n));
  }
  static BasicHermitian identity(Eigen::Index n) {
    return trusted(Matrix::Identity(n, n));
  }
  static BasicHermitian diagonal(const RealVectorT<Real>& d) {
    return trusted(d.template cast<Scalar>().asDiagonal().toDenseMatrix());
  }

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  BasicHermitian operator+(const BasicHermitian& o) const {
    return trusted(m_ + o.m_);
  }
  BasicHermitian operator-(const BasicHermitian& o) const {
    return trusted(m_ - o.m_);
  }
  BasicHermitian operator*(Real s) const { return trusted(m_ * s); }

 private:
  void symmetrize() { m_ = (0.5 * (m_ + m_.adjoint())).eval(); }

  Matrix m_;
};

using HermitianMatrix = BasicHermitian<double>;

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
template <typename Real>
struct BasicSpectrum {
  RealVectorT<Real> eigenvalues;
  ComplexMatrixT<Real> eigenvectors;  // column i pairs with eigenvalues(i)
  Real rank_tolerance = Real(kDefaultZeroTol);

  /// Number of eigenvalues with |lambda| above rank_tolerance * max|lambda|.
  Eigen::Index rank() const {
    if (eigenvalues.size() == 0) return 0;
    const Real top = eigenvalues.cwiseAbs().maxCoeff();
    if (top == Real(0)) return 0;
    return (eigenvalues.array().abs() > rank_tolerance * top).count();
  }

  ComplexMatrixT<Real> reconstruct() const {
    return eigenvectors *
           eigenvalues.template cast<std::complex<Real>>().asDiagonal() *
           eigenvectors.adjoint();
  }
};

using Spectrum = BasicSpectrum<double>;

namespace detail {

// Eigen's solver sorts ascending; flip to descending.
template <typename Real, typename Derived>
BasicSpectrum<Real> eig_raw(const Eigen::MatrixBase<Derived>& a,
                            Real zero_tol = Real(kDefaultZeroTol)) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrixT<Real>> solver(a.eval());
  if (solver.info() != Eigen::Success) {
    throw InvalidInput("Hermitian eigensolver failed to converge");
  }
  BasicSpectrum<Real> s;
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  s.rank_tolerance = zero_tol;
  return s;
}

template <typename Real>
Real sign_of(Real x, Real cutoff) {
  if (std::abs(x) <= cutoff) return Real(0);
  return x > Real(0) ? Real(1) : Real(-1);
}

}  // namespace detail

template <typename Real>
BasicSpectrum<Real> eig_hermitian(const BasicHermitian<Real>& a,
                                  Real zero_tol = Real(kDefaultZeroTol)) {
  return detail::eig_raw<Real>(a.matrix(), zero_tol);
}

/// Matrix sign function via the spectral decomposition. Eigenvalues with
/// |lambda| <= zero_tol * ||A|| map to zero, so sign(0) = 0.
template <typename Real>
BasicHermitian<Real> matrix_sign(const BasicHermitian<Real>& a,
                                 Real zero_tol = Real(kDefaultZeroTol)) {
  if (zero_tol < Real(0)) throw InvalidInput("zero_tol must be >= 0");
  const auto s = eig_hermitian(a, zero_tol);
  const Real top = s.eigenvalues.size() ? s.eigenvalues.cwiseAbs().maxCoeff()
                                        : Real(0);
  RealVectorT<Real> signs = s.eigenvalues.unaryExpr(
      [&](Real l) { return detail::sign_of(l, zero_tol * top); });
  if (top == Real(0)) signs.setZero();
  return BasicHermitian<Real>::trusted(
      s.eigenvectors * signs.template cast<std::complex<Real>>().asDiagonal() *
      s.eigenvectors.adjoint());
}

enum class NormKind { kOperator, kFrobenius, kNuclear };

template <typename Derived>
auto singular_values(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (a.size() == 0) return RealVectorT<Real>();
  Eigen::BDCSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic,
                              Eigen::Dynamic>>
      svd(a.eval());
  return RealVectorT<Real>(svd.singularValues());
}

template <typename Derived>
auto norm(const Eigen::MatrixBase<Derived>& a, NormKind kind) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  switch (kind) {
    case NormKind::kFrobenius:
      return Real(a.norm());
    case NormKind::kOperator: {
      const auto s = singular_values(a);
      return s.size() ? Real(s.maxCoeff()) : Real(0);
    }
    case NormKind::kNuclear:
      return Real(singular_values(a).sum());
  }
  return Real(0);
}

template <typename Real>
Real norm(const BasicHermitian<Real>& a, NormKind kind) {
  return norm(a.matrix(), kind);
}

template <typename Derived>
auto operator_norm(const Eigen::MatrixBase<Derived>& a) {
  return norm(a, NormKind::kOperator);
}
template <typename Derived>
auto nuclear_norm(const Eigen::MatrixBase<Derived>& a) {
  return norm(a, NormKind::kNuclear);
}

/// Operator norm of a Hermitian matrix through its extreme eigenvalues.
template <typename Derived>
auto hermitian_operator_norm(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  Eigen::SelfAdjointEigenSolver<
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>>
      solver(a.eval(), Eigen::EigenvaluesOnly);
  return Real(solver.eigenvalues().cwiseAbs().maxCoeff());
}

/// Number of singular values above zero_tol times the largest one.
template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& a,
                            double zero_tol = kDefaultZeroTol) {
  const auto s = singular_values(a);
  if (s.size() == 0 || s.maxCoeff() == 0) return 0;
  return (s.array() > zero_tol * s.maxCoeff()).count();
}

/// Tangent space T at a Hermitian matrix rho: matrices whose compression to
/// ker(rho) vanishes. Keeps a full eigenbasis [U V] of rho so that T can be
/// identified isometrically with R^(2nr - r^2).
template <typename Real>
class BasicTangentSpace {
 public:
  using Matrix = ComplexMatrixT<Real>;

  BasicTangentSpace() = default;

  explicit BasicTangentSpace(const BasicHermitian<Real>& rho,
                             Real zero_tol = Real(kDefaultZeroTol)) {
    const auto s = eig_hermitian(rho, zero_tol);
    const Eigen::Index n = rho.dim();
    // Order range directions by |lambda| so the first r columns span range.
    std::vector<Eigen::Index> order(n);
    for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
      return std::abs(s.eigenvalues(x)) > std::abs(s.eigenvalues(y));
    });
    basis_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      basis_.col(i) = s.eigenvectors.col(order[i]);
    rank_ = s.rank();
    projector_ = range() * range().adjoint();
  }

  /// Tangent space at the range of an isometry u (orthonormal columns).
  static BasicTangentSpace from_range(const Matrix& u) {
    const Eigen::Index n = u.rows();
    Eigen::HouseholderQR<Matrix> qr(u);
    BasicTangentSpace t;
    t.basis_ = qr.householderQ() * Matrix::Identity(n, n);
    t.basis_.leftCols(u.cols()) = u;
    t.rank_ = u.cols();
    t.projector_ = u * u.adjoint();
    return t;
  }

  Eigen::Index dim() const { return basis_.rows(); }
  Eigen::Index rank() const { return rank_; }
  const Matrix& range_projector() const { return projector_; }
  auto range() const { return basis_.leftCols(rank_); }
  auto kernel() const { return basis_.rightCols(dim() - rank_); }
  const Matrix& eigenbasis() const { return basis_; }

  /// Real dimension of T: 2nr - r^2.
  Eigen::Index real_dim() const { return 2 * dim() * rank_ - rank_ * rank_; }

  template <typename Derived>
  Matrix project(const Eigen::MatrixBase<Derived>& sigma) const {
    check_dim(sigma.rows(), sigma.cols());
    const Matrix ps = projector_ * sigma;
    return ps + sigma * projector_ - ps * projector_;
  }

  template <typename Derived>
  Matrix project_complement(const Eigen::MatrixBase<Derived>& sigma) const {
    check_dim(sigma.rows(), sigma.cols());
    const Matrix q = Matrix::Identity(dim(), dim()) - projector_;
    return q * sigma * q;
  }

  /// Orthonormal real coordinates of P_T(sigma) for Hermitian sigma.
  /// Layout: r diagonal entries of U^dag s U, then sqrt2*Re/Im of its strict
  /// upper triangle, then sqrt2*Re/Im of V^dag s U column by column.
  template <typename Derived>
  RealVectorT<Real> coordinates(const Eigen::MatrixBase<Derived>& sigma) const {
    check_dim(sigma.rows(), sigma.cols());
    const Matrix su = sigma * range();
    return coordinates_from_columns(su);
  }

  /// Same as coordinates() given only the product sigma * U (n x r).
  template <typename Derived>
  RealVectorT<Real> coordinates_from_columns(
      const Eigen::MatrixBase<Derived>& su) const {
    const Eigen::Index r = rank_;
    const Real s2 = std::sqrt(Real(2));
    const Matrix top = range().adjoint() * su;
    const Matrix bottom = kernel().adjoint() * su;
    RealVectorT<Real> c(real_dim());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < r; ++i) c(k++) = top(i, i).real();
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = i + 1; j < r; ++j) {
        c(k++) = s2 * top(i, j).real();
        c(k++) = s2 * top(i, j).imag();
      }
    for (Eigen::Index j = 0; j < r; ++j)
      for (Eigen::Index i = 0; i < bottom.rows(); ++i) {
        c(k++) = s2 * bottom(i, j).real();
        c(k++) = s2 * bottom(i, j).imag();
      }
    return c;
  }

  /// Inverse of coordinates(): the Hermitian element of T with coordinates c.
  Matrix from_coordinates(const RealVectorT<Real>& c) const {
    if (c.size() != real_dim()) throw InvalidInput("coordinate size mismatch");
    using C = std::complex<Real>;
    const Eigen::Index r = rank_, n = dim();
    const Real h = Real(1) / std::sqrt(Real(2));
    Matrix top = Matrix::Zero(r, r);
    Matrix bottom = Matrix::Zero(n - r, r);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < r; ++i) top(i, i) = c(k++);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = i + 1; j < r; ++j) {
        top(i, j) = C(h * c(k), h * c(k + 1));
        top(j, i) = std::conj(top(i, j));
        k += 2;
      }
    for (Eigen::Index j = 0; j < r; ++j)
      for (Eigen::Index i = 0; i < n - r; ++i) {
        bottom(i, j) = C(h * c(k), h * c(k + 1));
        k += 2;
      }
    const Matrix off = kernel() * bottom * range().adjoint();
    return range() * top * range().adjoint() + off + off.adjoint();
  }

 private:
  void check_dim(Eigen::Index rows, Eigen::Index cols) const {
    if (rows != dim() || cols != dim())
      throw InvalidInput("tangent projection: dimension mismatch");
  }

  Matrix basis_;
  Matrix projector_;
  Eigen::Index rank_ = 0;
};

using TangentSpace = BasicTangentSpace<double>;

/// P_T(sigma), or sigma - P_T(sigma) when complement is set.
template <typename Real>
BasicHermitian<Real> tangent_project(const BasicTangentSpace<Real>& t,
                                     const BasicHermitian<Real>& sigma,
                                     bool complement) {
  if (sigma.dim() != t.dim())
    throw InvalidInput("tangent projection: dimension mismatch");
  if (complement)
    return BasicHermitian<Real>::trusted(sigma.matrix() -
                                         t.project(sigma.matrix()));
  return BasicHermitian<Real>::trusted(t.project(sigma.matrix()));
}

/// Tangent space of a general square matrix: P_T s = P_U s + s P_V - P_U s P_V
/// with U the column space and V the row space.
template <typename Real>
class BasicGeneralTangentSpace {
 public:
  using Matrix = ComplexMatrixT<Real>;

  explicit BasicGeneralTangentSpace(const Matrix& rho,
                                    Real zero_tol = Real(kDefaultZeroTol)) {
    Eigen::BDCSVD<Matrix> svd(rho, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const Real top = s.size() ? s.maxCoeff() : Real(0);
    rank_ = top > 0 ? (s.array() > zero_tol * top).count() : 0;
    pu_ = svd.matrixU().leftCols(rank_) * svd.matrixU().leftCols(rank_).adjoint();
    pv_ = svd.matrixV().leftCols(rank_) * svd.matrixV().leftCols(rank_).adjoint();
  }

  Eigen::Index rank() const { return rank_; }

  template <typename Derived>
  Matrix project(const Eigen::MatrixBase<Derived>& sigma) const {
    const Matrix us = pu_ * sigma;
    return us + sigma * pv_ - us * pv_;
  }

 private:
  Matrix pu_, pv_;
  Eigen::Index rank_ = 0;
};

using GeneralTangentSpace = BasicGeneralTangentSpace<double>;

/// Hermitian dilation (1/sqrt2) [[0, s], [s^dag, 0]] of a square matrix.
template <typename Derived>
auto tilde_embed(const Eigen::MatrixBase<Derived>& sigma) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  if (sigma.rows() != sigma.cols() || sigma.rows() < 1)
    throw InvalidInput("tilde_embed requires a non-empty square matrix");
  const Eigen::Index n = sigma.rows();
  ComplexMatrixT<Real> out = ComplexMatrixT<Real>::Zero(2 * n, 2 * n);
  const Real h = Real(1) / std::sqrt(Real(2));
  out.topRightCorner(n, n) = h * sigma.template cast<std::complex<Real>>();
  out.bottomLeftCorner(n, n) = h * sigma.template cast<std::complex<Real>>().adjoint();
  return BasicHermitian<Real>::trusted(out);
}

/// Unitary part E(s) = sum_i psi_i phi_i^dag over singular triples with
/// s_i > zero_tol * ||s||.
template <typename Derived>
auto polar_unitary_part(const Eigen::MatrixBase<Derived>& sigma,
                        double zero_tol = kDefaultZeroTol) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Matrix = ComplexMatrixT<Real>;
  if (sigma.rows() != sigma.cols())
    throw InvalidInput("polar_unitary_part requires a square matrix");
  Eigen::BDCSVD<Matrix> svd(sigma.template cast<std::complex<Real>>().eval(),
                            Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const Real top = s.size() ? s.maxCoeff() : Real(0);
  Eigen::Index r = 0;
  if (top > 0) r = (s.array() > Real(zero_tol) * top).count();
  Matrix e = svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).adjoint();
  if (r == 0) e = Matrix::Zero(sigma.rows(), sigma.cols());
  return e;
}

}  // namespace lrr

#endif  // LRR_MATCORE_HPP_
