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

#ifndef UNCERTAINTY_EXPERIMENTS_HPP
#define UNCERTAINTY_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "uncertainty/classic_bounds.hpp"
#include "uncertainty/multi_bounds.hpp"

namespace uncertainty {

/// |psi(theta)> = [cos(theta/2) e^{i phi}, sin(theta/2)]^T, with e^{i phi}
/// taken as phase / |phase|.
struct QubitThetaFamily {
  Complex<double> phase;
};

/// A parameter set attached to a fixture. Cases sharing a group are combined
/// (largest lower bound, smallest upper bound). Empty `a`/`b` mean the sweep
/// supplies them.
struct NamedParams {
  std::string name;
  std::string group;
  MultiParams<double> params;
};

struct Fixture {
  std::string name;
  std::variant<CVector<double>, QubitThetaFamily> state_family;
  /// Ket as printed to four decimals, before renormalization (fixed-state fixtures).
  CVector<double> printed_ket;
  std::vector<Observable<double>> observables;
  WeightVector<double> weights;
  std::vector<NamedParams> param_cases;

  State<double> state_at(double theta = 0.0) const;
  std::vector<ParamCase<double>> group_cases(const std::string& group) const;
  const NamedParams& params(const std::string& name) const;
};

/// Two-observable 4-dimensional instance with complex weights x, y.
Fixture fixture_fig1();

/// Qubit family in theta with (sigma_x, sigma_y, sigma_z, A4).
Fixture fixture_fig2();

struct SweepResult {
  std::string grid_name;
  std::vector<double> grid;
  std::vector<std::pair<std::string, std::vector<double>>> columns;

  const std::vector<double>& column(const std::string& name) const;
};

/// Sweeps |a| on [0, 1] with |b| = sqrt(1 - |a|^2), a and b real. Columns:
/// sov, lower, upper. The dependent pair of every case is re-derived at each
/// grid point; at an endpoint the constraints pin the surviving pair and the
/// bounds collapse onto the weighted sum.
SweepResult sweep_abs_a(const Fixture& fx, const std::vector<double>& grid);

/// Columns sov, lb, ub, fb, pb, tb1, tbm, tb2 over the state parameter theta.
SweepResult sweep_theta(const Fixture& fx, const std::vector<double>& grid);

/// `points` uniformly spaced values on [lo, hi], endpoints included.
std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

/// Seeded Gaussian ensembles: Ginibre-derived Hermitian matrices,
/// normalized complex Gaussian kets, and full-rank density matrices.
class Ensemble {
 public:
  explicit Ensemble(std::uint64_t seed) : engine_(seed) {}

  Complex<double> complex_normal();
  CVector<double> ket(Index dim);
  CMatrix<double> hermitian(Index dim);
  CMatrix<double> density_matrix(Index dim);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct RandomInstance {
  State<double> state;
  std::vector<Observable<double>> observables;
  WeightVector<double> weights;
};

RandomInstance random_instance(int dim, int n_obs, std::uint64_t seed);

/// Same observables and weights as random_instance but with a full-rank
/// random density matrix.
RandomInstance random_mixed_instance(int dim, int n_obs, std::uint64_t seed);

enum class BoundSide { lower, upper };

/// One bound and the quantity it bounds.
struct BoundEntry {
  std::string name;
  BoundSide side;
  double value;
  double reference;
  bool holds;
};

struct BoundsReport {
  double weighted_sov = 0.0;
  std::vector<BoundEntry> bounds;
  std::vector<std::pair<std::string, double>> residues;

  bool all_hold() const;
  const BoundEntry& bound(const std::string& name) const;
  bool has(const std::string& name) const;
};

struct CompareParams {
  MultiParams<double> decomposition;
  DecompositionMode mode = DecompositionMode::bound;
  MpConfig<double> mp;
  /// Parameter cases for the pair-matching bounds (even N >= 4); empty skips them.
  std::vector<ParamCase<double>> matching_cases;
};

/// Evaluates every bound applicable to the instance.
/// Product bounds (robertson, schrodinger) reference DX*DY; sum bounds
/// (mp, fb, pb, tb_*) reference the unweighted sum of variances; the
/// improvable bounds reference the weighted sum.
BoundsReport compare_bounds(const State<double>& s, const std::vector<Observable<double>>& obs,
                            const WeightVector<double>& w, const CompareParams& params,
                            double rel_tol = 1e-9);

}  // namespace uncertainty

#endif  // UNCERTAINTY_EXPERIMENTS_HPP
