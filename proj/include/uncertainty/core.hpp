// Copyright 2026 The uncertainty-bounds Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNCERTAINTY_CORE_HPP
#define UNCERTAINTY_CORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "uncertainty/error.hpp"

namespace uncertainty {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double normalization = 1e-10;
inline constexpr double eigenvalue_floor = 1e-10;
inline constexpr double sqrt_reconstruction = 1e-8;
inline constexpr double imag_residue = 1e-9;
inline constexpr double constraint = 1e-10;
inline constexpr double negative_norm = 1e-10;
}  // namespace tol

namespace detail {

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  return m.size() == 0 ? Real(0) : m.cwiseAbs().maxCoeff();
}

template <typename Real>
bool is_hermitian(const CMatrix<Real>& m) {
  return max_abs(CMatrix<Real>(m - m.adjoint())) <=
         Real(tol::hermitian) * (Real(1) + max_abs(m));
}

inline std::string dims(Index a, Index b) {
  return std::to_string(a) + " vs " + std::to_string(b);
}

}  // namespace detail

/// A validated Hermitian matrix, d >= 2.
template <typename Real = double>
class Observable {
 public:
  using Scalar = Complex<Real>;
  using Matrix = CMatrix<Real>;

  explicit Observable(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
      throw Error(Errc::bad_dimension, "observable matrix is not square");
    }
    if (m_.rows() < 2) {
      throw Error(Errc::bad_dimension, "observable dimension must be >= 2");
    }
    if (!detail::is_hermitian<Real>(m_)) {
      throw Error(Errc::not_hermitian, "observable matrix differs from its adjoint");
    }
  }

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  // Real-linear combinations of Hermitian matrices stay Hermitian.
  friend Observable operator+(const Observable& a, const Observable& b) {
    check_same_dim(a, b);
    return Observable(Matrix(a.m_ + b.m_), trusted{});
  }
  friend Observable operator-(const Observable& a, const Observable& b) {
    check_same_dim(a, b);
    return Observable(Matrix(a.m_ - b.m_), trusted{});
  }
  friend Observable operator*(Real c, const Observable& a) {
    return Observable(Matrix(c * a.m_), trusted{});
  }
  friend Observable operator-(const Observable& a) {
    return Observable(Matrix(-a.m_), trusted{});
  }

 private:
  struct trusted {};
  Observable(Matrix m, trusted) : m_(std::move(m)) {}

  static void check_same_dim(const Observable& a, const Observable& b) {
    if (a.dim() != b.dim()) {
      throw Error(Errc::dimension_mismatch, detail::dims(a.dim(), b.dim()));
    }
  }

  Matrix m_;
};

template <typename Real>
Observable<Real> make_observable(CMatrix<Real> m) {
  return Observable<Real>(std::move(m));
}

/// Sum_j coeffs[j] * obs[j] for real coefficients.
template <typename Real>
Observable<Real> real_combination(const std::vector<Real>& coeffs,
                                  const std::vector<Observable<Real>>& obs) {
  if (coeffs.empty() || coeffs.size() != obs.size()) {
    throw Error(Errc::length_mismatch, "coefficient and observable counts differ");
  }
  Observable<Real> out = coeffs[0] * obs[0];
  for (std::size_t j = 1; j < obs.size(); ++j) out = out + coeffs[j] * obs[j];
  return out;
}

enum class StateKind { pure, mixed };

/// Pure ket or density matrix. Both are carried through a "root" R with
/// rho = R R^dagger: the ket itself (d x 1) or the PSD square root of rho.
template <typename Real = double>
class State {
 public:
  using Matrix = CMatrix<Real>;
  using Vector = CVector<Real>;

  static State pure(const Vector& ket) {
    if (ket.size() < 2) throw Error(Errc::bad_dimension, "state dimension must be >= 2");
    if (std::abs(ket.norm() - Real(1)) > Real(tol::normalization)) {
      throw Error(Errc::not_normalized, "ket norm deviates from 1");
    }
    State s;
    s.kind_ = StateKind::pure;
    s.root_ = ket;
    return s;
  }

  static State mixed(const Matrix& rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 2) {
      throw Error(Errc::bad_dimension, "density matrix must be square with d >= 2");
    }
    if (!detail::is_hermitian<Real>(rho)) {
      throw Error(Errc::not_density_matrix, "density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex<Real>(1)) > Real(tol::normalization)) {
      throw Error(Errc::not_density_matrix, "trace deviates from 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho);
    if (eig.info() != Eigen::Success) {
      throw Error(Errc::not_density_matrix, "eigendecomposition failed");
    }
    Eigen::Matrix<Real, Eigen::Dynamic, 1> lambda = eig.eigenvalues();
    if (lambda.minCoeff() < -Real(tol::eigenvalue_floor)) {
      throw Error(Errc::not_density_matrix, "negative eigenvalue");
    }
    lambda = lambda.cwiseMax(Real(0)).cwiseSqrt();
    const Matrix& v = eig.eigenvectors();
    Matrix root = v * lambda.template cast<Complex<Real>>().asDiagonal() * v.adjoint();
    if ((root * root - rho).norm() > Real(tol::sqrt_reconstruction)) {
      throw Error(Errc::not_density_matrix, "square root does not reproduce rho");
    }
    State s;
    s.kind_ = StateKind::mixed;
    s.rho_ = rho;
    s.root_ = std::move(root);
    return s;
  }

  StateKind kind() const noexcept { return kind_; }
  Index dim() const noexcept { return root_.rows(); }

  /// d x 1 ket for pure states, sqrt(rho) for mixed ones.
  const Matrix& root() const noexcept { return root_; }

  Vector ket() const {
    if (kind_ != StateKind::pure) throw Error(Errc::kind_mismatch, "ket() on mixed state");
    return root_.col(0);
  }
  const Matrix& rho() const {
    if (kind_ != StateKind::mixed) throw Error(Errc::kind_mismatch, "rho() on pure state");
    return rho_;
  }
  const Matrix& sqrt_rho() const {
    if (kind_ != StateKind::mixed) throw Error(Errc::kind_mismatch, "sqrt_rho() on pure state");
    return root_;
  }

 private:
  State() = default;

  StateKind kind_ = StateKind::pure;
  Matrix root_;
  Matrix rho_;
};

template <typename Real>
State<Real> make_pure_state(const CVector<Real>& ket) {
  return State<Real>::pure(ket);
}

template <typename Real>
State<Real> make_mixed_state(const CMatrix<Real>& rho) {
  return State<Real>::mixed(rho);
}

/// |psi><psi| as a mixed State.
template <typename Real>
State<Real> to_density(const State<Real>& s) {
  if (s.kind() == StateKind::mixed) return s;
  return State<Real>::mixed(s.root() * s.root().adjoint());
}

enum class VectorKind { ket, matrix };

/// Element of the working Hilbert space: (A - <A>)|psi> or (A - <A>) sqrt(rho).
template <typename Real = double>
class DeviationVector {
 public:
  using Matrix = CMatrix<Real>;

  DeviationVector(VectorKind kind, Matrix data) : kind_(kind), data_(std::move(data)) {}

  VectorKind kind() const noexcept { return kind_; }
  Index dim() const noexcept { return data_.rows(); }
  const Matrix& data() const noexcept { return data_; }

 private:
  VectorKind kind_;
  Matrix data_;
};

namespace detail {

template <typename Real>
void check_dims(const Observable<Real>& a, const State<Real>& s) {
  if (a.dim() != s.dim()) {
    throw Error(Errc::dimension_mismatch, "observable/state " + dims(a.dim(), s.dim()));
  }
}

template <typename Real>
void check_compatible(const DeviationVector<Real>& u, const DeviationVector<Real>& v) {
  if (u.kind() != v.kind()) throw Error(Errc::kind_mismatch, "ket vs matrix deviation vectors");
  if (u.data().rows() != v.data().rows() || u.data().cols() != v.data().cols()) {
    throw Error(Errc::dimension_mismatch, dims(u.dim(), v.dim()));
  }
}

}  // namespace detail

/// Standard ket inner product, or Hilbert-Schmidt Tr(P^dagger Q) for matrices.
template <typename Real>
Complex<Real> inner(const DeviationVector<Real>& u, const DeviationVector<Real>& v) {
  detail::check_compatible(u, v);
  return u.data().conjugate().cwiseProduct(v.data()).sum();
}

template <typename Real>
Real norm_sq(const DeviationVector<Real>& u) {
  return u.data().squaredNorm();
}

template <typename Real>
Real expectation(const Observable<Real>& a, const State<Real>& s) {
  detail::check_dims(a, s);
  const Complex<Real> value = (s.root().adjoint() * a.matrix() * s.root()).trace();
  if (std::abs(value.imag()) > Real(tol::imag_residue)) {
    throw Error(Errc::non_real_expectation, "imaginary residue in <A>");
  }
  return value.real();
}

/// <A^2> - <A>^2, evaluated as ||(A - <A>) R||^2 so that large means do not
/// cancel against <A^2>.
template <typename Real>
Real variance(const Observable<Real>& a, const State<Real>& s) {
  detail::check_dims(a, s);
  CMatrix<Real> shifted = a.matrix();
  shifted.diagonal().array() -= Complex<Real>(expectation(a, s));
  return (shifted * s.root()).squaredNorm();
}

template <typename Real>
DeviationVector<Real> deviation_vector(const Observable<Real>& a, const State<Real>& s) {
  detail::check_dims(a, s);
  const Real mean = expectation(a, s);
  CMatrix<Real> shifted = a.matrix();
  shifted.diagonal().array() -= Complex<Real>(mean);
  return DeviationVector<Real>(
      s.kind() == StateKind::pure ? VectorKind::ket : VectorKind::matrix,
      shifted * s.root());
}

/// Sum_j coeffs[j] * vectors[j].
template <typename Real>
DeviationVector<Real> combine(const std::vector<Complex<Real>>& coeffs,
                              const std::vector<DeviationVector<Real>>& vectors) {
  if (coeffs.empty() || vectors.empty()) throw Error(Errc::empty_input, "combine of nothing");
  if (coeffs.size() != vectors.size()) {
    throw Error(Errc::length_mismatch, "coefficient and vector counts differ");
  }
  CMatrix<Real> acc = coeffs[0] * vectors[0].data();
  for (std::size_t j = 1; j < vectors.size(); ++j) {
    detail::check_compatible(vectors[0], vectors[j]);
    acc += coeffs[j] * vectors[j].data();
  }
  return DeviationVector<Real>(vectors[0].kind(), std::move(acc));
}

/// i<[A,B]>, which is real for Hermitian A and B.
template <typename Real>
Real commutator_expectation(const Observable<Real>& a, const Observable<Real>& b,
                            const State<Real>& s) {
  detail::check_dims(a, s);
  detail::check_dims(b, s);
  const CMatrix<Real> comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  const Complex<Real> value = (s.root().adjoint() * comm * s.root()).trace();
  if (std::abs(value.real()) > Real(tol::imag_residue)) {
    throw Error(Errc::non_imaginary_commutator, "real residue in <[A,B]>");
  }
  return -value.imag();
}

/// <{A,B}> = <AB + BA>.
template <typename Real>
Real anticommutator_expectation(const Observable<Real>& a, const Observable<Real>& b,
                                const State<Real>& s) {
  detail::check_dims(a, s);
  detail::check_dims(b, s);
  const CMatrix<Real> anti = a.matrix() * b.matrix() + b.matrix() * a.matrix();
  return (s.root().adjoint() * anti * s.root()).trace().real();
}

}  // namespace uncertainty

#endif  // UNCERTAINTY_CORE_HPP
