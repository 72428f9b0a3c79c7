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

#ifndef UNCERTAINTY_TESTS_ORACLE_HPP
#define UNCERTAINTY_TESTS_ORACLE_HPP

// Direct-evaluation oracle used by the tests. It builds deviation vectors
// element by element and evaluates every bound through explicit norms of
// superpositions, never through the variance/commutator formulas the library
// uses. Only the input matrices are read from Eigen types.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "uncertainty/core.hpp"

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;
using Mat = std::vector<Vec>;

inline Mat to_mat(const uncertainty::CMatrix<double>& m) {
  Mat out(static_cast<std::size_t>(m.rows()), Vec(static_cast<std::size_t>(m.cols())));
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (std::size_t c = 0; c < out[r].size(); ++c) {
      out[r][c] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

inline Vec to_vec(const uncertainty::CVector<double>& v) {
  Vec out(static_cast<std::size_t>(v.size()));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = v(static_cast<Eigen::Index>(k));
  return out;
}

inline Vec apply(const Mat& m, const Vec& v) {
  Vec out(m.size(), C(0));
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  }
  return out;
}

inline Mat mul(const Mat& a, const Mat& b) {
  Mat out(a.size(), Vec(b[0].size(), C(0)));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t c = 0; c < b[0].size(); ++c) out[r][c] += a[r][k] * b[k][c];
    }
  }
  return out;
}

inline C dot(const Vec& a, const Vec& b) {
  C s(0);
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

inline double nsq(const Vec& v) { return dot(v, v).real(); }

inline Vec lin(C x, const Vec& u, C y, const Vec& v) {
  Vec out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = x * u[k] + y * v[k];
  return out;
}

inline double expect(const Mat& m, const Vec& psi) { return dot(psi, oracle::apply(m, psi)).real(); }

/// (M - <M>) psi
inline Vec dev(const Mat& m, const Vec& psi) {
  const double mean = expect(m, psi);
  Vec out = oracle::apply(m, psi);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= mean * psi[k];
  return out;
}

inline double variance(const Mat& m, const Vec& psi) { return nsq(dev(m, psi)); }

/// i <psi|[A,B]|psi>
inline double i_commutator(const Mat& a, const Mat& b, const Vec& psi) {
  const Mat ab = mul(a, b);
  const Mat ba = mul(b, a);
  Mat comm = ab;
  for (std::size_t r = 0; r < comm.size(); ++r) {
    for (std::size_t c = 0; c < comm.size(); ++c) comm[r][c] -= ba[r][c];
  }
  return (C(0, 1) * dot(psi, oracle::apply(comm, psi))).real();
}

/// Mixed-state variance Tr(rho A^2) - Tr(rho A)^2 straight from rho.
inline double variance_rho(const Mat& a, const Mat& rho) {
  const Mat ra = mul(rho, a);
  const Mat raa = mul(ra, a);
  C t1(0);
  C t2(0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    t1 += ra[k][k];
    t2 += raa[k][k];
  }
  return t2.real() - t1.real() * t1.real();
}

/// Maccone-Pati L1 at the maximizing orthogonal state, in closed form:
/// sign*i<[X,Y]> + ||op^dagger psi||^2 - |<psi|op^dagger|psi>|^2, op = X + i*sign*Y.
inline double mp_l1_closed(const Mat& x, const Mat& y, const Vec& psi, double sign) {
  const std::size_t d = psi.size();
  Mat op_dag(d, std::vector<C>(d));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      op_dag[r][c] = std::conj(x[c][r] + C(0, sign) * y[c][r]);
    }
  }
  const Vec t = oracle::apply(op_dag, psi);
  return sign * i_commutator(x, y, psi) + nsq(t) - std::norm(dot(psi, t));
}

/// Two-observable bounds through explicit vectors.
inline std::pair<double, double> pair_bounds(const Vec& p1, const Vec& p2, C x, C y, C a, C b,
                                             C m, C n, C mt, C nt) {
  const double outer = nsq(lin(x, p1, y, p2));
  const double u = std::abs(a) * std::sqrt(nsq(lin(m, p1, n, p2)));
  const double v = std::abs(b) * std::sqrt(nsq(lin(mt, p1, nt, p2)));
  return {0.5 * (outer + (u - v) * (u - v)), 0.5 * (outer + (u + v) * (u + v))};
}

struct PairParams {
  C a, b, m, n, mt, nt;
};

/// N-observable bounds; params indexed lexicographically over i < j.
inline std::pair<double, double> multi_bounds(const std::vector<Vec>& psi, const std::vector<C>& x,
                                              const std::vector<PairParams>& params) {
  Vec bar(psi[0].size(), C(0));
  for (std::size_t i = 0; i < psi.size(); ++i) {
    for (std::size_t k = 0; k < bar.size(); ++k) bar[k] += x[i] * psi[i][k];
  }
  double lower = nsq(bar);
  double upper = lower;
  std::size_t k = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    for (std::size_t j = i + 1; j < psi.size(); ++j, ++k) {
      const auto& p = params[k];
      const double u = std::abs(p.a) * std::sqrt(nsq(lin(p.m, psi[i], p.n, psi[j])));
      const double v = std::abs(p.b) * std::sqrt(nsq(lin(p.mt, psi[i], p.nt, psi[j])));
      lower += (u - v) * (u - v);
      upper += (u + v) * (u + v);
    }
  }
  const auto n = static_cast<double>(psi.size());
  return {lower / n, upper / n};
}

/// FB and PB for any N >= 3 from explicit pair-sum deviation vectors.
inline std::pair<double, double> fb_pb(const std::vector<Vec>& psi) {
  double sq = 0;
  double lin_sum = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    for (std::size_t j = i + 1; j < psi.size(); ++j) {
      const double v = nsq(lin(1.0, psi[i], 1.0, psi[j]));
      sq += v;
      lin_sum += std::sqrt(v);
    }
  }
  const auto n = static_cast<double>(psi.size());
  return {(sq - lin_sum * lin_sum / ((n - 1) * (n - 1))) / (n - 2), sq / (2 * (n - 1))};
}

}  // namespace oracle

#endif  // UNCERTAINTY_TESTS_ORACLE_HPP
