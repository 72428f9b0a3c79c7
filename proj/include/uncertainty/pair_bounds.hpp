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

#ifndef UNCERTAINTY_PAIR_BOUNDS_HPP
#define UNCERTAINTY_PAIR_BOUNDS_HPP

#include <algorithm>
#include <cmath>

#include "uncertainty/core.hpp"

// Improvable bounds on |x|^2 DA^2 + |y|^2 DB^2.
//
// With psi_1 = (A - <A>)psi and psi_2 = (B - <B>)psi, the weighted sum of
// variances is half of ||x psi_1 + y psi_2||^2 + ||x psi_1 - y psi_2||^2.
// The second vector is re-expanded as a (m psi_1 + n psi_2) +
// b (m_t psi_1 + n_t psi_2), and Cauchy-Schwarz on the cross term of that
// expansion gives
//
//   B_pm = 1/2 [ B^2(x, y) + ( |a| B(m, n) pm |b| B(m_t, n_t) )^2 ]
//
// with B^2(alpha, beta) = ||alpha psi_1 + beta psi_2||^2. Both bounds collapse
// onto the weighted sum when a = 0 or b = 0.

namespace uncertainty {

template <typename Real = double>
struct WeightPair {
  Complex<Real> x;
  Complex<Real> y;

  Real weighted_sum(Real var_a, Real var_b) const {
    return std::norm(x) * var_a + std::norm(y) * var_b;
  }
};

/// Which of the two coefficient pairs is supplied; the other is solved for.
enum class Given {
  leading,   ///< (m, n) supplied, (m_t, n_t) derived
  trailing,  ///< (m_t, n_t) supplied, (m, n) derived
};

/// Free parameters satisfying x = a m + b m_t and -y = a n + b n_t.
template <typename Real = double>
struct PairDecomposition {
  Complex<Real> a, b, m, n, m_t, n_t;
};

/// A parameter set before its dependent pair is solved for. p, q are (m, n)
/// for Given::leading and (m_t, n_t) for Given::trailing.
template <typename Real = double>
struct ParamCase {
  Given given = Given::leading;
  Complex<Real> a, b, p, q;
};

/// bound: the decomposition must have |a||b| != 0.
/// saturation: a = 0 or b = 0 is accepted, and both bounds then equal the
/// weighted sum.
enum class DecompositionMode { bound, saturation };

template <typename Real = double>
struct Bounds {
  Real lower;
  Real upper;
};

/// Solves for (m_t, n_t) given (a, b, m, n). With b = 0 the constraints pin
/// m = x/a and n = -y/a instead, overriding the supplied pair.
template <typename Real>
PairDecomposition<Real> resolve_decomposition(const WeightPair<Real>& w, Complex<Real> a,
                                              Complex<Real> b, Complex<Real> m,
                                              Complex<Real> n) {
  const Complex<Real> zero(0);
  if (b != zero) return {a, b, m, n, (w.x - a * m) / b, (-w.y - a * n) / b};
  if (a != zero) return {a, b, w.x / a, -w.y / a, zero, zero};
  throw Error(Errc::singular_solve, "a and b both vanish");
}

/// Solves for (m, n) given (a, b, m_t, n_t). With a = 0 the constraints pin
/// m_t = x/b and n_t = -y/b.
template <typename Real>
PairDecomposition<Real> resolve_decomposition_trailing(const WeightPair<Real>& w,
                                                       Complex<Real> a, Complex<Real> b,
                                                       Complex<Real> m_t, Complex<Real> n_t) {
  const Complex<Real> zero(0);
  if (a != zero) return {a, b, (w.x - b * m_t) / a, (-w.y - b * n_t) / a, m_t, n_t};
  if (b != zero) return {a, b, zero, zero, w.x / b, -w.y / b};
  throw Error(Errc::singular_solve, "a and b both vanish");
}

template <typename Real>
PairDecomposition<Real> resolve(const WeightPair<Real>& w, const ParamCase<Real>& c) {
  return c.given == Given::leading ? resolve_decomposition(w, c.a, c.b, c.p, c.q)
                                   : resolve_decomposition_trailing(w, c.a, c.b, c.p, c.q);
}

/// Largest of the two constraint residues.
template <typename Real>
Real constraint_residual(const WeightPair<Real>& w, const PairDecomposition<Real>& d) {
  return std::max(std::abs(w.x - (d.a * d.m + d.b * d.m_t)),
                  std::abs(-w.y - (d.a * d.n + d.b * d.n_t)));
}

template <typename Real>
bool satisfies_constraints(const WeightPair<Real>& w, const PairDecomposition<Real>& d) {
  return constraint_residual(w, d) <=
         Real(tol::constraint) * (Real(1) + std::abs(w.x) + std::abs(w.y));
}

/// ||alpha psi_1 + beta psi_2||^2 written through observables only:
///   Delta(a1 A + b1 B)^2 + Delta(a2 A + b2 B)^2 + (a1 b2 - b1 a2) i<[A,B]>
/// where subscripts 1, 2 are real and imaginary parts.
template <typename Real>
Real pair_norm_sq(Complex<Real> alpha, Complex<Real> beta, const Observable<Real>& a,
                  const Observable<Real>& b, const State<Real>& s) {
  const Real re = variance(alpha.real() * a + beta.real() * b, s);
  const Real im = variance(alpha.imag() * a + beta.imag() * b, s);
  const Real cross =
      (alpha.real() * beta.imag() - beta.real() * alpha.imag()) * commutator_expectation(a, b, s);
  const Real value = re + im + cross;
  if (value < -Real(tol::negative_norm) * (Real(1) + re + im + std::abs(cross))) {
    throw Error(Errc::negative_norm_square, "pair norm square is negative");
  }
  return std::max(value, Real(0));
}

/// Upper and lower bounds on |x|^2 DA^2 + |y|^2 DB^2 for one decomposition.
template <typename Real>
Bounds<Real> pair_bounds(const Observable<Real>& a, const Observable<Real>& b,
                         const State<Real>& s, const WeightPair<Real>& w,
                         const PairDecomposition<Real>& d,
                         DecompositionMode mode = DecompositionMode::bound) {
  detail::check_dims(a, s);
  detail::check_dims(b, s);
  if (w.x == Complex<Real>(0) && w.y == Complex<Real>(0)) {
    throw Error(Errc::bad_params, "all-zero weights define no relation");
  }
  if (!satisfies_constraints(w, d)) {
    throw Error(Errc::constraint_violated,
                "residual " + std::to_string(static_cast<double>(constraint_residual(w, d))));
  }
  if (mode == DecompositionMode::bound && std::abs(d.a) * std::abs(d.b) == Real(0)) {
    throw Error(Errc::trivial_decomposition, "|ab| = 0 outside saturation mode");
  }
  const Real outer = pair_norm_sq(w.x, w.y, a, b, s);
  const Real u = std::abs(d.a) * std::sqrt(pair_norm_sq(d.m, d.n, a, b, s));
  const Real v = std::abs(d.b) * std::sqrt(pair_norm_sq(d.m_t, d.n_t, a, b, s));
  return {(outer + (u - v) * (u - v)) / Real(2), (outer + (u + v) * (u + v)) / Real(2)};
}

template <typename Real = double>
struct IdentityResidual {
  Real lhs;
  Real rhs;

  Real residual() const { return std::abs(lhs - rhs); }
  bool holds(Real rel = Real(1e-10)) const { return residual() <= rel * (Real(1) + rhs); }
};

/// ||x psi_1 + y psi_2||^2 + ||x psi_1 - y psi_2||^2 against 2||x psi_1||^2 + 2||y psi_2||^2.
template <typename Real>
IdentityResidual<Real> verify_sum_identity(const Observable<Real>& a, const Observable<Real>& b,
                                           const State<Real>& s, const WeightPair<Real>& w) {
  const std::vector<DeviationVector<Real>> psi{deviation_vector(a, s), deviation_vector(b, s)};
  const Real plus = norm_sq(combine<Real>({w.x, w.y}, psi));
  const Real minus = norm_sq(combine<Real>({w.x, -w.y}, psi));
  const Real rhs = Real(2) * std::norm(w.x) * norm_sq(psi[0]) +
                   Real(2) * std::norm(w.y) * norm_sq(psi[1]);
  return {plus + minus, rhs};
}

}  // namespace uncertainty

#endif  // UNCERTAINTY_PAIR_BOUNDS_HPP
