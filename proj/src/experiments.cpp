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

#include "uncertainty/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace uncertainty {

namespace {

using C = Complex<double>;
using Mat = CMatrix<double>;

Mat real_matrix4(std::initializer_list<double> values) {
  Mat m(4, 4);
  auto it = values.begin();
  for (Index r = 0; r < 4; ++r) {
    for (Index c = 0; c < 4; ++c) m(r, c) = *it++;
  }
  return m;
}

Mat pauli(char which) {
  Mat m(2, 2);
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, C(0, -1), C(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

State<double> Fixture::state_at(double theta) const {
  if (const auto* ket = std::get_if<CVector<double>>(&state_family)) return State<double>::pure(*ket);
  // The published phase has modulus 1 + 3.5e-5; only its argument is used.
  const auto& family = std::get<QubitThetaFamily>(state_family);
  const Complex<double> phase = family.phase / std::abs(family.phase);
  CVector<double> ket(2);
  ket << std::cos(theta / 2) * phase, std::sin(theta / 2);
  return State<double>::pure(ket);
}

std::vector<ParamCase<double>> Fixture::group_cases(const std::string& group) const {
  std::vector<ParamCase<double>> out;
  for (const auto& np : param_cases) {
    if (np.group != group) continue;
    const auto& p = np.params;
    if (p.a.size() != 1 || p.b.size() != 1 || p.p.size() != 1 || p.q.size() != 1) {
      throw Error(Errc::bad_fixture_shape, "case '" + np.name + "' is not scalar");
    }
    out.push_back({p.given, p.a[0], p.b[0], p.p[0], p.q[0]});
  }
  if (out.empty()) throw Error(Errc::bad_fixture_shape, "no cases in group '" + group + "'");
  return out;
}

const NamedParams& Fixture::params(const std::string& name) const {
  for (const auto& np : param_cases) {
    if (np.name == name) return np;
  }
  throw Error(Errc::bad_fixture_shape, "fixture has no parameter case '" + name + "'");
}

Fixture fixture_fig1() {
  const Mat a1 = real_matrix4({5.2528, 4.1553, 1.2229, 3.0871,  //
                               4.1553, 5.0443, 1.1295, 3.0669,  //
                               1.2229, 1.1295, 0.8441, 1.2898,  //
                               3.0871, 3.0669, 1.2898, 3.6033});
  const Mat a2 = real_matrix4({0, -1.6562, -0.2396, -0.3176,  //
                               1.6562, 0, -0.1069, 0.1638,    //
                               0.2396, 0.1069, 0, 0.3284,     //
                               0.3176, -0.1638, -0.3284, 0});
  const Mat b1 = real_matrix4({0.9238, 1.0856, 0.6217, 0.3696,  //
                               1.0856, 2.1550, 1.1369, 0.5446,  //
                               0.6217, 1.1369, 0.6471, 0.2780,  //
                               0.3696, 0.5446, 0.2780, 0.1765});
  const Mat b2 = real_matrix4({0, -1.0209, -0.0365, 0.8770,  //
                               1.0209, 0, 1.0103, 1.0176,    //
                               0.0365, -1.0103, 0, 0.3580,   //
                               -0.8770, -1.0176, -0.3580, 0});
  const C i(0, 1);

  Fixture fx;
  fx.name = "fig1";
  fx.printed_ket.resize(4);
  fx.printed_ket << C(0.1452, 0.3194), C(0.4672, 0.3066), C(0.3373, 0.5010), C(0.2174, 0.3905);
  // The printed amplitudes carry 4 decimals and miss unit norm by ~5e-5.
  fx.state_family = CVector<double>(fx.printed_ket.normalized());
  fx.observables = {Observable<double>(a1 + i * a2), Observable<double>(-b1 + i * b2)};
  fx.weights = {{C(0.267, 0.769), C(-0.234, 0.158)}};
  fx.param_cases = {
      {"a0_case", "pair", {Given::leading, {}, {}, {C(1.231, -0.317)}, {C(1.920, 0.701)}}},
      {"b0_case", "pair", {Given::trailing, {}, {}, {C(0.501, 0.213)}, {C(-1.027, 0.104)}}},
  };
  return fx;
}

Fixture fixture_fig2() {
  Mat a4(2, 2);
  a4 << 0.8811, C(0.3876, -0.2000), C(0.3876, 0.2000), 0.2403;

  Fixture fx;
  fx.name = "fig2";
  fx.state_family = QubitThetaFamily{C(0.6607, -0.7507)};
  fx.observables = {Observable<double>(pauli('x')), Observable<double>(pauli('y')),
                    Observable<double>(pauli('z')), Observable<double>(a4)};
  fx.weights = WeightVector<double>::ones(4);

  MultiParams<double> bounds{Given::leading,
                             {C(0.03)},
                             {C(0.1419, -0.7572), C(0.4064, -0.1821), C(0.5931, -0.6196),
                              C(0.8094, -0.7699), C(0.4706, -0.4211), C(0.6741, -0.4390)},
                             {C(0.4888, 0.8208), C(0.2168, 0.1228), C(0.8329, 0.6494),
                              C(0.5015, 0.7366), C(0.1027, 0.7107), C(0.3644, 0.1053)},
                             {C(0.9586, 0.3085), C(0.4237, 0.1309), C(0.5601, 0.3435),
                              C(0.0988, 0.6631), C(0.4831, 0.5162), C(0.1536, 0.7967)}};
  fx.param_cases = {
      {"lb_ub", "bounds", bounds},
      {"tb1_mn", "tb1", {Given::leading, {C(0.5)}, {C(5)}, {C(2)}, {C(1)}}},
      {"tb1_tilde", "tb1", {Given::trailing, {C(0.5)}, {C(5)}, {C(1)}, {C(1)}}},
      {"tb2_mn", "tb2", {Given::leading, {C(0.01)}, {C(1)}, {C(2)}, {C(1)}}},
      {"tb2_tilde", "tb2", {Given::trailing, {C(0.01)}, {C(1)}, {C(1)}, {C(1)}}},
  };
  return fx;
}

const std::vector<double>& SweepResult::column(const std::string& name) const {
  for (const auto& [key, values] : columns) {
    if (key == name) return values;
  }
  throw Error(Errc::bad_params, "no column '" + name + "'");
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points < 2) throw Error(Errc::bad_params, "grid needs at least two points");
  if (!(lo <= hi)) throw Error(Errc::bad_params, "grid range must be nondecreasing");
  std::vector<double> out(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) out[k] = lo + step * static_cast<double>(k);
  out.back() = hi;
  return out;
}

SweepResult sweep_abs_a(const Fixture& fx, const std::vector<double>& grid) {
  if (fx.observables.size() != 2 || fx.weights.size() != 2) {
    throw Error(Errc::bad_fixture_shape, "|a| sweep needs a two-observable fixture");
  }
  std::vector<const NamedParams*> cases;
  for (const auto& np : fx.param_cases) {
    const auto& p = np.params;
    if (p.a.empty() && p.b.empty() && p.p.size() == 1 && p.q.size() == 1) cases.push_back(&np);
  }
  if (cases.empty()) throw Error(Errc::bad_fixture_shape, "no sweepable parameter cases");

  const State<double> s = fx.state_at();
  const auto& obs = fx.observables;
  const WeightPair<double> w = fx.weights.pair(0, 1);
  const double sov = w.weighted_sum(variance(obs[0], s), variance(obs[1], s));

  SweepResult out{"abs_a", grid, {{"sov", {}}, {"lower", {}}, {"upper", {}}}};
  for (double t : grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(Errc::bad_params, "|a| grid must lie in [0, 1]");
    const C a(t);
    const C b(std::sqrt(std::max(0.0, 1.0 - t * t)));
    const auto mode = (t == 0.0 || b == C(0)) ? DecompositionMode::saturation
                                              : DecompositionMode::bound;
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t c = 0; c < cases.size(); ++c) {
      const auto& p = cases[c]->params;
      const auto bounds = pair_bounds(obs[0], obs[1], s, w,
                                      resolve(w, ParamCase<double>{p.given, a, b, p.p[0], p.q[0]}),
                                      mode);
      lower = c == 0 ? bounds.lower : std::max(lower, bounds.lower);
      upper = c == 0 ? bounds.upper : std::min(upper, bounds.upper);
    }
    out.columns[0].second.push_back(sov);
    out.columns[1].second.push_back(lower);
    out.columns[2].second.push_back(upper);
  }
  return out;
}

SweepResult sweep_theta(const Fixture& fx, const std::vector<double>& grid) {
  if (!std::holds_alternative<QubitThetaFamily>(fx.state_family) || fx.observables.size() != 4) {
    throw Error(Errc::bad_fixture_shape, "theta sweep needs a four-observable qubit family");
  }
  const auto& obs = fx.observables;
  const auto& w = fx.weights;
  const auto decomposition = resolve_multi(w, fx.params("lb_ub").params);
  const auto tb1_cases = fx.group_cases("tb1");
  const auto tb2_cases = fx.group_cases("tb2");
  const auto matchings = perfect_matchings(obs.size());

  SweepResult out{"theta", grid, {}};
  for (const char* name : {"sov", "lb", "ub", "fb", "pb", "tb1", "tbm", "tb2"}) {
    out.columns.emplace_back(name, std::vector<double>{});
    out.columns.back().second.reserve(grid.size());
  }
  for (double theta : grid) {
    const State<double> s = fx.state_at(theta);
    const auto bounds = multi_bounds(obs, s, w, decomposition);
    const auto tb1 = composite_bound(obs, s, w, matchings, tb1_cases);
    const auto tb2 = composite_bound(obs, s, w, matchings, tb2_cases);
    const double row[] = {weighted_sov(w, obs, s), bounds.lower, bounds.upper, fb_bound(obs, s),
                          pb_bound(obs, s), tb1.tb_avg, tb1.tb_max, tb2.tb_avg};
    for (std::size_t c = 0; c < out.columns.size(); ++c) out.columns[c].second.push_back(row[c]);
  }
  return out;
}

C Ensemble::complex_normal() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re, im};
}

CVector<double> Ensemble::ket(Index dim) {
  CVector<double> v(dim);
  for (Index k = 0; k < dim; ++k) v(k) = complex_normal();
  return v / v.norm();
}

CMatrix<double> Ensemble::hermitian(Index dim) {
  Mat g(dim, dim);
  for (Index c = 0; c < dim; ++c) {
    for (Index r = 0; r < dim; ++r) g(r, c) = complex_normal();
  }
  return (g + g.adjoint()) / 2.0;
}

CMatrix<double> Ensemble::density_matrix(Index dim) {
  Mat g(dim, dim);
  for (Index c = 0; c < dim; ++c) {
    for (Index r = 0; r < dim; ++r) g(r, c) = complex_normal();
  }
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Exact Hermitian symmetry after the product.
  return (rho + rho.adjoint()) / 2.0;
}

namespace {

RandomInstance draw_instance(int dim, int n_obs, std::uint64_t seed, bool mixed) {
  if (dim < 2 || n_obs < 2) throw Error(Errc::bad_params, "random instance needs dim >= 2 and n_obs >= 2");
  Ensemble ens(seed);
  std::vector<Observable<double>> obs;
  obs.reserve(static_cast<std::size_t>(n_obs));
  for (int k = 0; k < n_obs; ++k) obs.emplace_back(ens.hermitian(dim));
  WeightVector<double> w;
  for (int k = 0; k < n_obs; ++k) w.x.push_back(ens.complex_normal());
  State<double> s = mixed ? State<double>::mixed(ens.density_matrix(dim))
                          : State<double>::pure(ens.ket(dim));
  return {std::move(s), std::move(obs), std::move(w)};
}

}  // namespace

RandomInstance random_instance(int dim, int n_obs, std::uint64_t seed) {
  return draw_instance(dim, n_obs, seed, false);
}

RandomInstance random_mixed_instance(int dim, int n_obs, std::uint64_t seed) {
  return draw_instance(dim, n_obs, seed, true);
}

bool BoundsReport::all_hold() const {
  return std::all_of(bounds.begin(), bounds.end(), [](const BoundEntry& e) { return e.holds; });
}

const BoundEntry& BoundsReport::bound(const std::string& name) const {
  for (const auto& e : bounds) {
    if (e.name == name) return e;
  }
  throw Error(Errc::bad_params, "report has no bound '" + name + "'");
}

bool BoundsReport::has(const std::string& name) const {
  return std::any_of(bounds.begin(), bounds.end(),
                     [&](const BoundEntry& e) { return e.name == name; });
}

BoundsReport compare_bounds(const State<double>& s, const std::vector<Observable<double>>& obs,
                            const WeightVector<double>& w, const CompareParams& params,
                            double rel_tol) {
  const std::size_t n = obs.size();
  if (n < 2) throw Error(Errc::length_mismatch, "need at least two observables");

  std::vector<double> var(n);
  double plain_sov = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    var[i] = variance(obs[i], s);
    plain_sov += var[i];
  }

  BoundsReport report;
  report.weighted_sov = weighted_sov(w, obs, s);
  auto add = [&](std::string name, BoundSide side, double value, double reference) {
    const double slack = rel_tol * (1.0 + std::abs(reference));
    const bool holds =
        side == BoundSide::lower ? value <= reference + slack : value >= reference - slack;
    report.bounds.push_back({std::move(name), side, value, reference, holds});
  };

  if (n == 2) {
    const double product = std::sqrt(var[0] * var[1]);
    add("robertson", BoundSide::lower, robertson(obs[0], obs[1], s), product);
    add("schrodinger", BoundSide::lower, schrodinger(obs[0], obs[1], s), product);
    add("mp_l2", BoundSide::lower, mp_l2(obs[0], obs[1], s), plain_sov);
    if (s.kind() == StateKind::pure) {
      add("mp_l1", BoundSide::lower, mp_l1(obs[0], obs[1], s, params.mp), plain_sov);
      add("mp", BoundSide::lower, mp_bound(obs[0], obs[1], s, params.mp), plain_sov);
    }
    const auto sum_id = verify_sum_identity(obs[0], obs[1], s, w.pair(0, 1));
    report.residues.emplace_back("sum_identity", sum_id.residual() / (1.0 + sum_id.rhs));
  }
  if (n >= 3) add("fb", BoundSide::lower, fb_bound(obs, s), plain_sov);
  add("pb", BoundSide::lower, pb_bound(obs, s), plain_sov);

  const auto multi_id = verify_multi_identity(obs, s, w);
  report.residues.emplace_back("multi_identity", multi_id.residual() / (1.0 + multi_id.rhs));

  if (!params.decomposition.a.empty()) {
    const auto d = resolve_multi(w, params.decomposition);
    for (std::size_t k = 0; k < d.pairs.size(); ++k) {
      const auto [i, j] = pair_at(k, n);
      report.residues.emplace_back("constraint_" + std::to_string(k),
                                   constraint_residual(w.pair(i, j), d.pairs[k]));
    }
    const auto b = multi_bounds(obs, s, w, d, params.mode);
    add("lb", BoundSide::lower, b.lower, report.weighted_sov);
    add("ub", BoundSide::upper, b.upper, report.weighted_sov);
  }

  if (n >= 4 && n % 2 == 0 && !params.matching_cases.empty()) {
    const auto tb = composite_bound(obs, s, w, perfect_matchings(n), params.matching_cases);
    add("tbm", BoundSide::lower, tb.tb_max, report.weighted_sov);
    add("tb_avg", BoundSide::lower, tb.tb_avg, report.weighted_sov);
  }
  return report;
}

}  // namespace uncertainty
