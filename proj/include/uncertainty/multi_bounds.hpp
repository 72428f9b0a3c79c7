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

#ifndef UNCERTAINTY_MULTI_BOUNDS_HPP
#define UNCERTAINTY_MULTI_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "uncertainty/pair_bounds.hpp"

// Improvable bounds on sum_i |x_i|^2 Delta^2(A_i) for N observables, and the
// composite bounds obtained by splitting an even set of observables into
// disjoint pairs and summing two-observable lower bounds.
//
// Indices are zero-based throughout. Pair k enumerates (i, j), i < j, in
// lexicographic order: (0,1), (0,2), ..., (N-2, N-1).

namespace uncertainty {

template <typename Real = double>
struct WeightVector {
  std::vector<Complex<Real>> x;

  std::size_t size() const noexcept { return x.size(); }
  WeightPair<Real> pair(std::size_t i, std::size_t j) const { return {x[i], x[j]}; }

  static WeightVector ones(std::size_t n) { return {std::vector<Complex<Real>>(n, Real(1))}; }
};

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Lexicographic rank of (i, j), 0 <= i < j < n.
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  if (!(i < j && j < n)) {
    throw Error(Errc::bad_indices, "need 0 <= i < j < n, got (" + std::to_string(i) + ", " +
                                       std::to_string(j) + ", " + std::to_string(n) + ")");
  }
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

/// Inverse of pair_index.
inline std::pair<std::size_t, std::size_t> pair_at(std::size_t k, std::size_t n) {
  if (k >= pair_count(n)) throw Error(Errc::bad_indices, "pair rank out of range");
  std::size_t i = 0;
  while (k >= n - i - 1) {
    k -= n - i - 1;
    ++i;
  }
  return {i, i + 1 + k};
}

template <typename Real = double>
struct MultiDecomposition {
  std::vector<PairDecomposition<Real>> pairs;  // indexed by pair_index
};

/// Per-pair parameter vectors; each has length 1 (broadcast to every pair)
/// or pair_count(N).
template <typename Real = double>
struct MultiParams {
  Given given = Given::leading;
  std::vector<Complex<Real>> a, b, p, q;
};

namespace detail {

template <typename Real>
void check_weights(const WeightVector<Real>& w, std::size_t n_obs) {
  if (w.size() < 2) throw Error(Errc::length_mismatch, "need at least two weights");
  if (w.size() != n_obs) throw Error(Errc::length_mismatch, "weight and observable counts differ");
  if (std::all_of(w.x.begin(), w.x.end(), [](Complex<Real> v) { return v == Complex<Real>(0); })) {
    throw Error(Errc::bad_params, "all-zero weights define no relation");
  }
}

template <typename Real>
void check_observables(const std::vector<Observable<Real>>& obs, const State<Real>& s) {
  for (const auto& o : obs) check_dims(o, s);
}

template <typename Real>
Complex<Real> broadcast(const std::vector<Complex<Real>>& v, std::size_t k, std::size_t count) {
  if (v.size() == 1) return v[0];
  if (v.size() != count) throw Error(Errc::length_mismatch, "parameter vector length");
  return v[k];
}

}  // namespace detail

template <typename Real>
MultiDecomposition<Real> resolve_multi(const WeightVector<Real>& w, const MultiParams<Real>& p) {
  const std::size_t n = w.size();
  const std::size_t count = pair_count(n);
  MultiDecomposition<Real> out;
  out.pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto [i, j] = pair_at(k, n);
    ParamCase<Real> c{p.given, detail::broadcast(p.a, k, count), detail::broadcast(p.b, k, count),
                      detail::broadcast(p.p, k, count), detail::broadcast(p.q, k, count)};
    out.pairs.push_back(resolve(w.pair(i, j), c));
  }
  return out;
}

/// ||sum_j x_j psi_j||^2 through observables only:
///   Delta^2(sum x_Rj A_j) + Delta^2(sum x_Ij A_j)
///     + sum_{j<l} (x_Rj x_Il - x_Ij x_Rl) i<[A_j, A_l]>
template <typename Real>
Real multi_norm_sq(const WeightVector<Real>& w, const std::vector<Observable<Real>>& obs,
                   const State<Real>& s) {
  detail::check_weights(w, obs.size());
  detail::check_observables(obs, s);
  std::vector<Real> re(w.size());
  std::vector<Real> im(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    re[j] = w.x[j].real();
    im[j] = w.x[j].imag();
  }
  const Real var_re = variance(real_combination(re, obs), s);
  const Real var_im = variance(real_combination(im, obs), s);
  Real cross = 0;
  Real cross_scale = 0;
  for (std::size_t j = 0; j < obs.size(); ++j) {
    for (std::size_t l = j + 1; l < obs.size(); ++l) {
      const Real c = re[j] * im[l] - im[j] * re[l];
      if (c == Real(0)) continue;
      const Real term = c * commutator_expectation(obs[j], obs[l], s);
      cross += term;
      cross_scale += std::abs(term);
    }
  }
  const Real value = var_re + var_im + cross;
  if (value < -Real(tol::negative_norm) * (Real(1) + var_re + var_im + cross_scale)) {
    throw Error(Errc::negative_norm_square, "multi norm square is negative");
  }
  return std::max(value, Real(0));
}

/// Weighted sum of variances, sum_i |x_i|^2 Delta^2(A_i).
template <typename Real>
Real weighted_sov(const WeightVector<Real>& w, const std::vector<Observable<Real>>& obs,
                  const State<Real>& s) {
  if (w.size() != obs.size()) throw Error(Errc::length_mismatch, "weight and observable counts differ");
  Real sum = 0;
  for (std::size_t i = 0; i < obs.size(); ++i) sum += std::norm(w.x[i]) * variance(obs[i], s);
  return sum;
}

/// B_pm = 1/N [ ||psi_bar||^2 + sum_k (|a_k| B(m_k, n_k) pm |b_k| B(m_t_k, n_t_k))^2 ]
/// where each B(., .) is the pair norm on the k-th pair of observables.
template <typename Real>
Bounds<Real> multi_bounds(const std::vector<Observable<Real>>& obs, const State<Real>& s,
                          const WeightVector<Real>& w, const MultiDecomposition<Real>& d,
                          DecompositionMode mode = DecompositionMode::bound) {
  detail::check_weights(w, obs.size());
  detail::check_observables(obs, s);
  const std::size_t n = obs.size();
  if (d.pairs.size() != pair_count(n)) {
    throw Error(Errc::length_mismatch, "decomposition needs one entry per pair");
  }
  Real sum_a = 0;
  Real sum_b = 0;
  for (std::size_t k = 0; k < d.pairs.size(); ++k) {
    const auto [i, j] = pair_at(k, n);
    if (!satisfies_constraints(w.pair(i, j), d.pairs[k])) {
      throw Error(Errc::constraint_violated, "pair " + std::to_string(k));
    }
    sum_a += std::norm(d.pairs[k].a);
    sum_b += std::norm(d.pairs[k].b);
  }
  if (mode == DecompositionMode::bound && sum_a * sum_b == Real(0)) {
    throw Error(Errc::trivial_decomposition, "all a_k or all b_k vanish outside saturation mode");
  }

  const Real outer = multi_norm_sq(w, obs, s);
  Real lower = outer;
  Real upper = outer;
  for (std::size_t k = 0; k < d.pairs.size(); ++k) {
    const auto [i, j] = pair_at(k, n);
    const auto& p = d.pairs[k];
    const Real u = std::abs(p.a) * std::sqrt(pair_norm_sq(p.m, p.n, obs[i], obs[j], s));
    const Real v = std::abs(p.b) * std::sqrt(pair_norm_sq(p.m_t, p.n_t, obs[i], obs[j], s));
    lower += (u - v) * (u - v);
    upper += (u + v) * (u + v);
  }
  const auto count = static_cast<Real>(n);
  return {lower / count, upper / count};
}

/// ||psi_bar||^2 + sum_k ||x_i psi_i - x_j psi_j||^2 against N sum_i ||x_i psi_i||^2.
template <typename Real>
IdentityResidual<Real> verify_multi_identity(const std::vector<Observable<Real>>& obs,
                                             const State<Real>& s, const WeightVector<Real>& w) {
  detail::check_weights(w, obs.size());
  std::vector<DeviationVector<Real>> psi;
  psi.reserve(obs.size());
  for (const auto& o : obs) psi.push_back(deviation_vector(o, s));

  Real lhs = norm_sq(combine(w.x, psi));
  Real rhs = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    rhs += std::norm(w.x[i]) * norm_sq(psi[i]);
    for (std::size_t j = i + 1; j < psi.size(); ++j) {
      lhs += norm_sq(combine<Real>({w.x[i], -w.x[j]}, {psi[i], psi[j]}));
    }
  }
  return {lhs, static_cast<Real>(psi.size()) * rhs};
}

/// Partition of {0..N-1} into disjoint pairs.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
};

inline void validate_matching(const Matching& m, std::size_t n) {
  if (n % 2 != 0) throw Error(Errc::odd_count, "matching needs an even observable count");
  if (m.groups.size() * 2 != n) throw Error(Errc::bad_indices, "matching does not cover every index");
  std::vector<bool> seen(n, false);
  for (const auto& [i, j] : m.groups) {
    if (i >= n || j >= n || i == j || seen[i] || seen[j]) {
      throw Error(Errc::bad_indices, "matching indices must be distinct and in range");
    }
    seen[i] = seen[j] = true;
  }
}

/// All perfect matchings of {0..n-1}; for n = 4 the order is
/// {(0,1),(2,3)}, {(0,2),(1,3)}, {(0,3),(1,2)}.
inline std::vector<Matching> perfect_matchings(std::size_t n) {
  if (n % 2 != 0) throw Error(Errc::odd_count, "matching needs an even observable count");
  std::vector<Matching> out;
  Matching current;
  std::vector<bool> used(n, false);
  auto recurse = [&](auto&& self) -> void {
    std::size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
      out.push_back(current);
      return;
    }
    used[first] = true;
    for (std::size_t j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      current.groups.emplace_back(first, j);
      self(self);
      current.groups.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  recurse(recurse);
  return out;
}

/// Sum over matched pairs (i, j) of the two-observable lower bound on
/// |x_i|^2 Delta^2(A_i) + |x_j|^2 Delta^2(A_j). Every case in `cases` is
/// resolved against each pair's weights; the pair keeps the largest lower bound.
template <typename Real>
Real matching_bound(const std::vector<Observable<Real>>& obs, const State<Real>& s,
                    const WeightVector<Real>& w, const Matching& matching,
                    const std::vector<ParamCase<Real>>& cases,
                    DecompositionMode mode = DecompositionMode::bound) {
  validate_matching(matching, obs.size());
  detail::check_weights(w, obs.size());
  if (cases.empty()) throw Error(Errc::empty_input, "no parameter cases");
  Real total = 0;
  for (const auto& [i, j] : matching.groups) {
    const auto pw = w.pair(i, j);
    Real best = 0;
    bool first = true;
    for (const auto& c : cases) {
      const Real lower = pair_bounds(obs[i], obs[j], s, pw, resolve(pw, c), mode).lower;
      best = first ? lower : std::max(best, lower);
      first = false;
    }
    total += best;
  }
  return total;
}

template <typename Real = double>
struct CompositeBound {
  Real tb_max;
  Real tb_avg;
};

/// Maximum and mean of matching_bound over several matchings.
template <typename Real>
CompositeBound<Real> composite_bound(const std::vector<Observable<Real>>& obs,
                                     const State<Real>& s, const WeightVector<Real>& w,
                                     const std::vector<Matching>& matchings,
                                     const std::vector<ParamCase<Real>>& cases,
                                     DecompositionMode mode = DecompositionMode::bound) {
  if (matchings.empty()) throw Error(Errc::empty_input, "no matchings");
  Real best = 0;
  Real sum = 0;
  for (std::size_t k = 0; k < matchings.size(); ++k) {
    const Real v = matching_bound(obs, s, w, matchings[k], cases, mode);
    best = k == 0 ? v : std::max(best, v);
    sum += v;
  }
  return {best, sum / static_cast<Real>(matchings.size())};
}

}  // namespace uncertainty

#endif  // UNCERTAINTY_MULTI_BOUNDS_HPP
