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

#ifndef UNCERTAINTY_CLASSIC_BOUNDS_HPP
#define UNCERTAINTY_CLASSIC_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "uncertainty/core.hpp"

// Reference bounds from the literature: product-form (Robertson,
// Schrodinger), Maccone-Pati sum-form, and the four-observable pair-sum
// bounds usually labelled FB and PB.

namespace uncertainty {

/// 1/2 |<[X,Y]>|
template <typename Real>
Real robertson(const Observable<Real>& x, const Observable<Real>& y, const State<Real>& s) {
  return std::abs(commutator_expectation(x, y, s)) / Real(2);
}

/// Robertson-Schrodinger: sqrt((1/2|<[X,Y]>|)^2 + |1/2<{X,Y}> - <X><Y>|^2).
/// Bounds the product of standard deviations.
template <typename Real>
Real schrodinger(const Observable<Real>& x, const Observable<Real>& y, const State<Real>& s) {
  const Real comm = robertson(x, y, s);
  const Real cov = anticommutator_expectation(x, y, s) / Real(2) -
                   expectation(x, s) * expectation(y, s);
  return std::hypot(comm, cov);
}

enum class MpSign { plus, minus, automatic };

template <typename Real = double>
struct MpConfig {
  MpSign sign = MpSign::automatic;
  /// Unset: the orthogonal state maximizing the overlap term is used.
  std::optional<CVector<Real>> perp;
};

namespace detail {

template <typename Real>
Real mp_l1_signed(const Observable<Real>& x, const Observable<Real>& y, const CVector<Real>& psi,
                  const std::optional<CVector<Real>>& perp, Real sign, Real i_comm) {
  const Complex<Real> i_sign(0, sign);
  const CMatrix<Real> op = x.matrix() + i_sign * y.matrix();
  CVector<Real> chosen;
  if (perp) {
    chosen = *perp;
  } else {
    // <psi|op|perp> = <op^dagger psi|perp>; the best perp is the normalized
    // component of op^dagger psi orthogonal to psi.
    const CVector<Real> target = op.adjoint() * psi;
    CVector<Real> proj = target - psi * psi.dot(target);
    const Real len = proj.norm();
    if (len <= std::numeric_limits<Real>::epsilon() * (Real(1) + target.norm())) {
      return sign * i_comm;
    }
    chosen = proj / len;
  }
  const Complex<Real> amp = psi.dot(op * chosen);
  return sign * i_comm + std::norm(amp);
}

}  // namespace detail

/// L1 = +-i<[X,Y]> + |<psi|X +- iY|psi_perp>|^2. Pure states only.
template <typename Real>
Real mp_l1(const Observable<Real>& x, const Observable<Real>& y, const State<Real>& s,
           const MpConfig<Real>& cfg = {}) {
  if (s.kind() != StateKind::pure) {
    throw Error(Errc::mixed_state_unsupported, "Maccone-Pati L1 needs a pure state");
  }
  detail::check_dims(x, s);
  detail::check_dims(y, s);
  const CVector<Real> psi = s.ket();
  if (cfg.perp) {
    const CVector<Real>& perp = *cfg.perp;
    if (perp.size() != psi.size()) {
      throw Error(Errc::invalid_perp, "perp dimension " + detail::dims(perp.size(), psi.size()));
    }
    if (std::abs(perp.norm() - Real(1)) > Real(tol::normalization) ||
        std::abs(psi.dot(perp)) > Real(tol::normalization)) {
      throw Error(Errc::invalid_perp, "perp must be a unit vector orthogonal to the state");
    }
  }
  const Real i_comm = commutator_expectation(x, y, s);
  switch (cfg.sign) {
    case MpSign::plus:
      return detail::mp_l1_signed(x, y, psi, cfg.perp, Real(1), i_comm);
    case MpSign::minus:
      return detail::mp_l1_signed(x, y, psi, cfg.perp, Real(-1), i_comm);
    case MpSign::automatic:
      break;
  }
  return std::max(detail::mp_l1_signed(x, y, psi, cfg.perp, Real(1), i_comm),
                  detail::mp_l1_signed(x, y, psi, cfg.perp, Real(-1), i_comm));
}

/// L2 = 1/2 Delta(X+Y)^2
template <typename Real>
Real mp_l2(const Observable<Real>& x, const Observable<Real>& y, const State<Real>& s) {
  return variance(x + y, s) / Real(2);
}

template <typename Real>
Real mp_bound(const Observable<Real>& x, const Observable<Real>& y, const State<Real>& s,
              const MpConfig<Real>& cfg = {}) {
  return std::max(mp_l1(x, y, s, cfg), mp_l2(x, y, s));
}

/// |L1 - (DX^2 + DY^2)|, which vanishes identically on qubits.
template <typename Real>
Real qubit_l1_identity_gap(const Observable<Real>& x, const Observable<Real>& y,
                           const State<Real>& s) {
  if (s.dim() != 2) throw Error(Errc::not_qubit, "dimension " + std::to_string(s.dim()));
  return std::abs(mp_l1(x, y, s) - (variance(x, s) + variance(y, s)));
}

namespace detail {

// Delta(A_i + A_j)^2 for i < j, lexicographic.
template <typename Real>
std::vector<Real> pair_sum_variances(const std::vector<Observable<Real>>& obs,
                                     const State<Real>& s) {
  std::vector<Real> out;
  out.reserve(obs.size() * (obs.size() - 1) / 2);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (std::size_t j = i + 1; j < obs.size(); ++j) out.push_back(variance(obs[i] + obs[j], s));
  }
  return out;
}

}  // namespace detail

/// 1/(N-2) { sum Delta(A_i+A_j)^2 - 1/(N-1)^2 [sum Delta(A_i+A_j)]^2 }.
/// At N = 4 the prefactor is 1/2 and the inner coefficient 1/9. Not clamped;
/// the value may be negative.
template <typename Real>
Real fb_bound(const std::vector<Observable<Real>>& obs, const State<Real>& s) {
  const auto n = static_cast<Real>(obs.size());
  if (obs.size() < 3) throw Error(Errc::length_mismatch, "FB bound needs N >= 3");
  Real sq = 0;
  Real lin = 0;
  for (Real v : detail::pair_sum_variances(obs, s)) {
    sq += v;
    lin += std::sqrt(v);
  }
  return (sq - lin * lin / ((n - 1) * (n - 1))) / (n - 2);
}

/// 1/(2(N-1)) sum Delta(A_i+A_j)^2; 1/6 at N = 4.
template <typename Real>
Real pb_bound(const std::vector<Observable<Real>>& obs, const State<Real>& s) {
  const auto n = static_cast<Real>(obs.size());
  if (obs.size() < 2) throw Error(Errc::length_mismatch, "PB bound needs N >= 2");
  Real sq = 0;
  for (Real v : detail::pair_sum_variances(obs, s)) sq += v;
  return sq / (Real(2) * (n - 1));
}

}  // namespace uncertainty

#endif  // UNCERTAINTY_CLASSIC_BOUNDS_HPP
