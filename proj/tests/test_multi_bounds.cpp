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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "test_util.hpp"
#include "uncertainty/experiments.hpp"
#include "uncertainty/multi_bounds.hpp"

using namespace uncertainty;
using namespace testing;

namespace {

std::vector<Obs> paulis() { return {Obs(sx()), Obs(sy()), Obs(sz())}; }

std::vector<oracle::Vec> oracle_deviations(const std::vector<Obs>& obs, const St& s) {
  std::vector<oracle::Vec> out;
  const auto psi = oracle::to_vec(s.ket());
  for (const auto& o : obs) out.push_back(oracle::dev(oracle::to_mat(o.matrix()), psi));
  return out;
}

std::vector<oracle::PairParams> oracle_params(const MultiDecomposition<double>& d) {
  std::vector<oracle::PairParams> out;
  for (const auto& p : d.pairs) out.push_back({p.a, p.b, p.m, p.n, p.m_t, p.n_t});
  return out;
}

MultiParams<double> random_params(Ensemble& ens, std::size_t count) {
  MultiParams<double> p;
  for (std::size_t k = 0; k < count; ++k) {
    p.a.push_back(ens.complex_normal());
    p.b.push_back(ens.complex_normal());
    p.p.push_back(ens.complex_normal());
    p.q.push_back(ens.complex_normal());
  }
  return p;
}

}  // namespace

TEST_CASE("pair ranks are lexicographic and zero-based") {
  CHECK(pair_index(0, 1, 4) == 0);
  CHECK(pair_index(2, 3, 4) == 5);
  CHECK(pair_index(1, 3, 4) == 4);
  for (std::size_t n = 2; n <= 7; ++n) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++k) {
        CHECK(pair_index(i, j, n) == k);
        CHECK(pair_at(k, n) == std::pair(i, j));
      }
    }
    CHECK(k == pair_count(n));
  }
  CHECK_ERRC(pair_index(1, 1, 4), Errc::bad_indices);
  CHECK_ERRC(pair_index(2, 1, 4), Errc::bad_indices);
  CHECK_ERRC(pair_index(0, 4, 4), Errc::bad_indices);
  CHECK_ERRC(pair_at(6, 4), Errc::bad_indices);
}

TEST_CASE("multi norm square") {
  CHECK(multi_norm_sq(WeightVector<double>::ones(3), paulis(), zero()) == doctest::Approx(2));

  const auto inst = random_instance(5, 2, 3);
  const WeightVector<double> single{{1.0, 0.0}};
  CHECK(multi_norm_sq(single, inst.observables, inst.state) ==
        doctest::Approx(variance(inst.observables[0], inst.state)).epsilon(1e-12));

  const auto fx = fixture_fig2();
  const St s = fx.state_at(M_PI / 2);
  const auto psi = oracle_deviations(fx.observables, s);
  oracle::Vec bar(2, C(0));
  for (const auto& v : psi) {
    for (std::size_t k = 0; k < 2; ++k) bar[k] += v[k];
  }
  CHECK(multi_norm_sq(fx.weights, fx.observables, s) ==
        doctest::Approx(oracle::nsq(bar)).epsilon(1e-12));

  CHECK_ERRC(multi_norm_sq(WeightVector<double>{{0.0, 0.0, 0.0}}, paulis(), zero()),
             Errc::bad_params);
  CHECK_ERRC(multi_norm_sq(WeightVector<double>::ones(2), paulis(), zero()),
             Errc::length_mismatch);
}

TEST_CASE("multi norm square matches the combined deviation norm") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const auto inst = random_instance(2 + static_cast<int>(seed % 7), n, seed);
    std::vector<DeviationVector<double>> psi;
    for (const auto& o : inst.observables) psi.push_back(deviation_vector(o, inst.state));
    const double direct = norm_sq(combine(inst.weights.x, psi));
    CHECK(std::abs(multi_norm_sq(inst.weights, inst.observables, inst.state) - direct) <=
          1e-10 * (1 + direct));
  }
}

TEST_CASE("multi identity") {
  const auto r = verify_multi_identity(paulis(), zero(), WeightVector<double>::ones(3));
  CHECK(r.lhs == doctest::Approx(6));
  CHECK(r.rhs == doctest::Approx(6));
  CHECK(r.holds());

  const std::vector<Obs> diag{Obs(sz()), Obs(sz()), Obs(id2())};
  const auto zero_r = verify_multi_identity(diag, zero(), WeightVector<double>::ones(3));
  CHECK(zero_r.residual() == 0.0);

  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = random_instance(2 + static_cast<int>(seed % 7), 2 + static_cast<int>(seed % 5),
                                      seed);
    CHECK(verify_multi_identity(inst.observables, inst.state, inst.weights).holds());
  }
}

TEST_CASE("multi bounds reduce to pair bounds at N = 2") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_instance(2 + static_cast<int>(seed % 7), 2, seed);
    Ensemble ens(seed ^ 0xabcdef);
    const auto params = random_params(ens, 1);
    const auto d = resolve_multi(inst.weights, params);
    const auto multi = multi_bounds(inst.observables, inst.state, inst.weights, d);
    const auto pair = pair_bounds(inst.observables[0], inst.observables[1], inst.state,
                                  inst.weights.pair(0, 1), d.pairs[0]);
    CHECK(std::abs(multi.lower - pair.lower) <= 1e-10 * (1 + pair.upper));
    CHECK(std::abs(multi.upper - pair.upper) <= 1e-10 * (1 + pair.upper));
  }
}

TEST_CASE("multi bounds: sandwich, saturation and oracle agreement") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const auto inst = random_instance(2 + static_cast<int>(seed % 7), n, seed);
    const auto& o = inst.observables;
    const St& s = inst.state;
    const double sov = weighted_sov(inst.weights, o, s);
    CAPTURE(seed);

    Ensemble ens(seed + 500);
    const auto params = random_params(ens, pair_count(n));
    const auto d = resolve_multi(inst.weights, params);
    const auto b = multi_bounds(o, s, inst.weights, d);
    CHECK(b.lower <= sov + 1e-9 * (1 + sov));
    CHECK(b.upper >= sov - 1e-9 * (1 + sov));

    const auto [lo, hi] = oracle::multi_bounds(oracle_deviations(o, s), inst.weights.x,
                                               oracle_params(d));
    CHECK(std::abs(b.lower - lo) <= 1e-9 * (1 + hi));
    CHECK(std::abs(b.upper - hi) <= 1e-9 * (1 + hi));

    for (const Given given : {Given::leading, Given::trailing}) {
      MultiParams<double> sat = params;
      sat.given = given;
      const std::vector<C> zeros(pair_count(n), C(0));
      const std::vector<C> ones(pair_count(n), C(1));
      sat.a = given == Given::leading ? zeros : ones;
      sat.b = given == Given::leading ? ones : zeros;
      const auto e = multi_bounds(o, s, inst.weights, resolve_multi(inst.weights, sat),
                                  DecompositionMode::saturation);
      CHECK(std::abs(e.lower - sov) <= 1e-10 * (1 + sov));
      CHECK(std::abs(e.upper - sov) <= 1e-10 * (1 + sov));
    }
  }
}

TEST_CASE("multi bounds on the qubit fixture") {
  const auto fx = fixture_fig2();
  const St s = fx.state_at(M_PI / 2);
  const auto d = resolve_multi(fx.weights, fx.params("lb_ub").params);
  const auto b = multi_bounds(fx.observables, s, fx.weights, d);
  CHECK(b.lower == doctest::Approx(2.0895490815967412).epsilon(1e-10));
  CHECK(b.upper == doctest::Approx(2.1943543882241694).epsilon(1e-10));
  CHECK(weighted_sov(fx.weights, fx.observables, s) ==
        doctest::Approx(2.1278816568051915).epsilon(1e-12));
  const auto [lo, hi] =
      oracle::multi_bounds(oracle_deviations(fx.observables, s), fx.weights.x, oracle_params(d));
  CHECK(b.lower == doctest::Approx(lo).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(hi).epsilon(1e-12));
}

TEST_CASE("multi bounds rejections") {
  const auto w = WeightVector<double>::ones(3);
  MultiParams<double> p{Given::leading, {0.0}, {1.0}, {1.0}, {1.0}};
  const auto d = resolve_multi(w, p);
  CHECK_ERRC(multi_bounds(paulis(), plus(), w, d), Errc::trivial_decomposition);

  auto broken = d;
  broken.pairs[1].m_t += 1.0;
  CHECK_ERRC(multi_bounds(paulis(), plus(), w, broken, DecompositionMode::saturation),
             Errc::constraint_violated);

  auto short_d = d;
  short_d.pairs.pop_back();
  CHECK_ERRC(multi_bounds(paulis(), plus(), w, short_d, DecompositionMode::saturation),
             Errc::length_mismatch);

  MultiParams<double> bad_len{Given::leading, {0.5, 0.5}, {1.0}, {1.0}, {1.0}};
  CHECK_ERRC(resolve_multi(w, bad_len), Errc::length_mismatch);
}

TEST_CASE("matchings") {
  const auto m4 = perfect_matchings(4);
  REQUIRE(m4.size() == 3);
  using G = std::vector<std::pair<std::size_t, std::size_t>>;
  CHECK(m4[0].groups == G{{0, 1}, {2, 3}});
  CHECK(m4[1].groups == G{{0, 2}, {1, 3}});
  CHECK(m4[2].groups == G{{0, 3}, {1, 2}});
  CHECK(perfect_matchings(6).size() == 15);
  for (const auto& m : perfect_matchings(6)) CHECK_NOTHROW(validate_matching(m, 6));

  CHECK_ERRC(perfect_matchings(3), Errc::odd_count);
  CHECK_ERRC(validate_matching(Matching{{{0, 1}, {1, 2}}}, 4), Errc::bad_indices);
  CHECK_ERRC(validate_matching(Matching{{{0, 1}}}, 4), Errc::bad_indices);
  CHECK_ERRC(validate_matching(Matching{{{0, 4}, {1, 2}}}, 4), Errc::bad_indices);
  CHECK_ERRC(validate_matching(Matching{{{0, 1}}}, 3), Errc::odd_count);
}

TEST_CASE("matching and composite bounds") {
  const auto inst = random_instance(3, 4, 11);
  const auto& o = inst.observables;
  const St& s = inst.state;
  const auto w = WeightVector<double>::ones(4);
  double sov = 0;
  for (const auto& a : o) sov += variance(a, s);

  const std::vector<ParamCase<double>> sat{{Given::leading, 0, 1, 1, 1}};
  CHECK(matching_bound(o, s, w, perfect_matchings(4)[0], sat, DecompositionMode::saturation) ==
        doctest::Approx(sov).epsilon(1e-10));
  CHECK_ERRC(matching_bound(o, s, w, perfect_matchings(4)[0], sat), Errc::trivial_decomposition);
  CHECK_ERRC(matching_bound(o, s, w, perfect_matchings(4)[0], {}), Errc::empty_input);
  CHECK_ERRC(composite_bound(o, s, w, {}, sat), Errc::empty_input);

  const std::vector<ParamCase<double>> cases{{Given::leading, 0.5, 5, 2, 1},
                                             {Given::trailing, 0.5, 5, 1, 1}};
  const auto single = composite_bound(o, s, w, {perfect_matchings(4)[1]}, cases);
  CHECK(single.tb_max == single.tb_avg);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = random_instance(2 + static_cast<int>(seed % 7), 4, seed);
    double total = 0;
    for (const auto& a : r.observables) total += variance(a, r.state);
    const auto all = perfect_matchings(4);
    const auto c = composite_bound(r.observables, r.state, w, all, cases);
    CHECK(c.tb_max >= c.tb_avg);
    for (const auto& m : all) {
      CHECK(matching_bound(r.observables, r.state, w, m, cases) <= total + 1e-9 * (1 + total));
    }
  }
}
