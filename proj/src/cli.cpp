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

#include "uncertainty/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "uncertainty/io.hpp"

namespace uncertainty::cli {

namespace {

using io::Json;

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults{
      {"sandwich", 1e-9}, {"identity", 1e-10}, {"saturation", 1e-10}, {"hierarchy", 1e-9}};
  return defaults;
}

struct Document {
  std::string text;
  int code = kOk;
};

void emit(const RunConfig& cfg, const Document& doc, std::ostream& out) {
  std::string path = cfg.output_path;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = (std::filesystem::path(dir) / (cfg.command + "." + cfg.format)).string();
    }
  }
  if (path.empty()) {
    out << doc.text;
  } else {
    io::write_atomic(path, doc.text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Rows where a lower-bound column exceeds `sov` or an upper-bound column
// falls short of it.
std::vector<std::string> sandwich_violations(const SweepResult& sweep,
                                             const std::vector<std::string>& lowers,
                                             const std::vector<std::string>& uppers, double tol) {
  std::vector<std::string> out;
  const auto& sov = sweep.column("sov");
  for (std::size_t r = 0; r < sweep.grid.size(); ++r) {
    const double slack = tol * (1.0 + std::abs(sov[r]));
    for (const auto& name : lowers) {
      if (sweep.column(name)[r] > sov[r] + slack) {
        out.push_back("row " + std::to_string(r) + " (" + sweep.grid_name + "=" +
                      io::format_number(sweep.grid[r]) + "): " + name + " > sov");
      }
    }
    for (const auto& name : uppers) {
      if (sweep.column(name)[r] < sov[r] - slack) {
        out.push_back("row " + std::to_string(r) + " (" + sweep.grid_name + "=" +
                      io::format_number(sweep.grid[r]) + "): " + name + " < sov");
      }
    }
  }
  return out;
}

Document sweep_document(const RunConfig& cfg, const SweepResult& sweep,
                        const std::vector<std::string>& violations, std::ostream& err) {
  for (const auto& v : violations) err << "invariant violation: " << v << "\n";
  Document doc;
  doc.text = cfg.format == "csv" ? io::to_csv(sweep) : dump(io::to_json(sweep));
  doc.code = violations.empty() ? kOk : kInvariantViolation;
  return doc;
}

Document run_fig1(const RunConfig& cfg, std::ostream& err) {
  const auto sweep = sweep_abs_a(fixture_fig1(), uniform_grid(0.0, 1.0, cfg.grid_points));
  return sweep_document(cfg, sweep,
                        sandwich_violations(sweep, {"lower"}, {"upper"}, cfg.tolerance("sandwich")),
                        err);
}

Document run_fig2(const RunConfig& cfg, std::ostream& err) {
  const auto sweep =
      sweep_theta(fixture_fig2(), uniform_grid(cfg.theta_min, cfg.theta_max, cfg.grid_points));
  return sweep_document(
      cfg, sweep,
      sandwich_violations(sweep, {"lb", "fb", "pb", "tb1", "tbm", "tb2"}, {"ub"},
                          cfg.tolerance("sandwich")),
      err);
}

// Deterministic instance shape: d cycles through 2..8, N through 2..6.
int instance_dim(std::size_t i) { return 2 + static_cast<int>(i % 7); }
int instance_count(std::size_t i) { return 2 + static_cast<int>((i / 7) % 5); }
std::uint64_t instance_seed(std::uint64_t seed, std::size_t i) { return seed + i; }

MultiParams<double> random_params(Ensemble& ens, std::size_t n_obs) {
  MultiParams<double> p;
  p.given = Given::leading;
  for (std::size_t k = 0; k < pair_count(n_obs); ++k) {
    p.a.push_back(ens.complex_normal());
    p.b.push_back(ens.complex_normal());
    p.p.push_back(ens.complex_normal());
    p.q.push_back(ens.complex_normal());
  }
  return p;
}

double rel_excess(double value, double reference) {
  return std::max(0.0, value - reference) / (1.0 + std::abs(reference));
}

struct InstanceChecks {
  std::vector<std::string> failed;
  double max_residual = 0.0;
};

InstanceChecks check_instance(std::size_t i, std::uint64_t seed, const RunConfig& cfg) {
  const int dim = instance_dim(i);
  const int n_obs = instance_count(i);
  const std::uint64_t s = instance_seed(seed, i);
  const auto inst = random_instance(dim, n_obs, s);
  const auto& obs = inst.observables;
  const auto& st = inst.state;
  const auto& w = inst.weights;
  Ensemble ens(~s);

  const double t_sand = cfg.tolerance("sandwich");
  const double t_id = cfg.tolerance("identity");
  const double t_sat = cfg.tolerance("saturation");
  const double t_hier = cfg.tolerance("hierarchy");

  InstanceChecks out;
  auto check = [&](bool ok, const char* name) {
    if (!ok) out.failed.emplace_back(name);
  };

  // Norm identities.
  const auto pw = w.pair(0, 1);
  const auto sum_id = verify_sum_identity(obs[0], obs[1], st, pw);
  const auto multi_id = verify_multi_identity(obs, st, w);
  const double r1 = sum_id.residual() / (1.0 + sum_id.rhs);
  const double r2 = multi_id.residual() / (1.0 + multi_id.rhs);
  out.max_residual = std::max(r1, r2);
  check(r1 <= t_id, "sum_identity");
  check(r2 <= t_id, "multi_identity");

  // Two-observable sandwich and saturation.
  const double va = variance(obs[0], st);
  const double vb = variance(obs[1], st);
  const double sov = pw.weighted_sum(va, vb);
  const auto params = random_params(ens, obs.size());
  const auto d = resolve_decomposition(pw, params.a[0], params.b[0], params.p[0], params.q[0]);
  const auto pb = pair_bounds(obs[0], obs[1], st, pw, d);
  check(rel_excess(pb.lower, sov) <= t_sand && rel_excess(sov, pb.upper) <= t_sand,
        "pair_sandwich");
  for (const auto& sat :
       {resolve_decomposition(pw, {0.0}, {1.0}, params.p[0], params.q[0]),
        resolve_decomposition_trailing(pw, {1.0}, {0.0}, params.p[0], params.q[0])}) {
    const auto b = pair_bounds(obs[0], obs[1], st, pw, sat, DecompositionMode::saturation);
    check(std::abs(b.lower - sov) <= t_sat * sov && std::abs(b.upper - sov) <= t_sat * sov,
          "saturation");
  }

  // Multi-observable sandwich, and agreement with the pair form at N = 2.
  const double wsov = weighted_sov(w, obs, st);
  const auto md = resolve_multi(w, params);
  const auto mb = multi_bounds(obs, st, w, md);
  check(rel_excess(mb.lower, wsov) <= t_sand && rel_excess(wsov, mb.upper) <= t_sand,
        "multi_sandwich");
  if (obs.size() == 2) {
    check(std::abs(mb.lower - pb.lower) <= t_id * std::max(1.0, pb.lower) &&
              std::abs(mb.upper - pb.upper) <= t_id * std::max(1.0, pb.upper),
          "pair_reduction");
  }

  // Reference bounds.
  const double product = std::sqrt(va * vb);
  const double rob = robertson(obs[0], obs[1], st);
  const double sch = schrodinger(obs[0], obs[1], st);
  check(rob <= sch + t_hier * (1.0 + sch), "robertson_le_schrodinger");
  check(rel_excess(sch, product) <= t_hier, "schrodinger_le_product");
  check(rel_excess(mp_bound(obs[0], obs[1], st), va + vb) <= t_hier, "mp_le_sov");
  if (dim == 2) check(qubit_l1_identity_gap(obs[0], obs[1], st) <= t_id * (1.0 + va + vb), "qubit_l1");
  double plain = 0.0;
  for (const auto& o : obs) plain += variance(o, st);
  check(rel_excess(pb_bound(obs, st), plain) <= t_hier, "pb_le_sov");
  if (obs.size() >= 3) check(rel_excess(fb_bound(obs, st), plain) <= t_hier, "fb_le_sov");
  return out;
}

Document run_verify(const RunConfig& cfg, std::ostream& err) {
  std::size_t failures = 0;
  double max_residual = 0.0;
  Json failed = Json::array();
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const auto res = check_instance(i, cfg.seed, cfg);
    max_residual = std::max(max_residual, res.max_residual);
    if (res.failed.empty()) continue;
    ++failures;
    for (const auto& name : res.failed) {
      err << "invariant violation: instance " << i << " (seed " << instance_seed(cfg.seed, i)
          << "): " << name << "\n";
      failed.push_back({{"instance", i}, {"check", name}});
    }
  }
  Json j;
  j["instances"] = cfg.instances;
  j["seed"] = cfg.seed;
  j["failures"] = failures;
  j["max_residual"] = io::round_output(max_residual);
  j["failed"] = std::move(failed);
  if (cfg.format == "csv") {
    return {"instances,seed,failures,max_residual\n" + std::to_string(cfg.instances) + "," +
                std::to_string(cfg.seed) + "," + std::to_string(failures) + "," +
                io::format_number(max_residual) + "\n",
            failures == 0 ? kOk : kInvariantViolation};
  }
  return {dump(j), failures == 0 ? kOk : kInvariantViolation};
}

Document run_random_suite(const RunConfig& cfg, std::ostream& err) {
  SweepResult table{"instance", {}, {}};
  for (const char* name : {"seed", "dim", "n_obs", "weighted_sov", "lb", "ub", "pb"}) {
    table.columns.emplace_back(name, std::vector<double>{});
  }
  std::vector<std::string> violations;
  const double tol = cfg.tolerance("sandwich");
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    const int dim = instance_dim(i);
    const int n_obs = instance_count(i);
    const std::uint64_t s = instance_seed(cfg.seed, i);
    const auto inst = random_instance(dim, n_obs, s);
    Ensemble ens(~s);
    const auto b = multi_bounds(inst.observables, inst.state, inst.weights,
                                resolve_multi(inst.weights, random_params(ens, inst.observables.size())));
    const double wsov = weighted_sov(inst.weights, inst.observables, inst.state);
    if (rel_excess(b.lower, wsov) > tol || rel_excess(wsov, b.upper) > tol) {
      violations.push_back("row " + std::to_string(i) + ": lb <= sov <= ub fails");
    }
    const double row[] = {static_cast<double>(s), static_cast<double>(dim),
                          static_cast<double>(n_obs), wsov, b.lower, b.upper,
                          pb_bound(inst.observables, inst.state)};
    table.grid.push_back(static_cast<double>(i));
    for (std::size_t c = 0; c < table.columns.size(); ++c) table.columns[c].second.push_back(row[c]);
  }
  return sweep_document(cfg, table, violations, err);
}

Document run_compare(const RunConfig& cfg, std::istream& in, std::ostream& err) {
  Json doc;
  try {
    if (cfg.input_path.empty() || cfg.input_path == "-") {
      doc = Json::parse(in);
    } else {
      std::ifstream f(cfg.input_path);
      if (!f) throw Error(Errc::config_error, "cannot open " + cfg.input_path);
      doc = Json::parse(f);
    }
  } catch (const Json::parse_error& e) {
    throw Error(Errc::input_schema_error, e.what());
  }
  const auto inst = io::instance_from_json(doc);
  const auto report = compare_bounds(inst.state, inst.observables, inst.weights, inst.params,
                                     cfg.tolerance("sandwich"));
  for (const auto& e : report.bounds) {
    if (!e.holds) err << "invariant violation: bound " << e.name << "\n";
  }
  const int code = report.all_hold() ? kOk : kInvariantViolation;
  if (cfg.format == "csv") {
    std::string text = "name,side,value,reference,holds\n";
    for (const auto& e : report.bounds) {
      text += e.name + "," + (e.side == BoundSide::lower ? "lower" : "upper") + "," +
              io::format_number(e.value) + "," + io::format_number(e.reference) + "," +
              (e.holds ? "true" : "false") + "\n";
    }
    return {text, code};
  }
  return {dump(io::to_json(report)), code};
}

Document run_fixture(const RunConfig& cfg) {
  if (cfg.fixture_name == "fig1") return {dump(io::to_json(fixture_fig1()))};
  if (cfg.fixture_name == "fig2") return {dump(io::to_json(fixture_fig2()))};
  throw Error(Errc::config_error, "unknown fixture '" + cfg.fixture_name + "'");
}

}  // namespace

double RunConfig::tolerance(const std::string& key) const {
  if (auto it = tolerances.find(key); it != tolerances.end()) return it->second;
  return default_tolerances().at(key);
}

RunConfig normalized(RunConfig cfg) {
  static const std::vector<std::string> commands{"fig1",   "fig2",         "compare",
                                                 "verify", "random-suite", "fixture"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
    throw Error(Errc::config_error, "unknown command '" + cfg.command + "'");
  }
  if (cfg.grid_points == 0) cfg.grid_points = cfg.command == "fig1" ? 101 : 201;
  if (cfg.grid_points < 2) throw Error(Errc::config_error, "grid points must be >= 2");
  if (!(cfg.theta_min <= cfg.theta_max)) {
    throw Error(Errc::config_error, "theta range must be nondecreasing");
  }
  if (cfg.format.empty()) {
    const bool tabular = cfg.command == "fig1" || cfg.command == "fig2" || cfg.command == "random-suite";
    cfg.format = tabular ? "csv" : "json";
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    throw Error(Errc::config_error, "format must be csv or json");
  }
  if (cfg.command == "fixture" && cfg.format != "json") {
    throw Error(Errc::config_error, "fixtures are exported as json");
  }
  for (const auto& [key, value] : cfg.tolerances) {
    if (!default_tolerances().contains(key)) throw Error(Errc::config_error, "unknown tolerance '" + key + "'");
    if (!(value > 0.0)) throw Error(Errc::config_error, "tolerances must be > 0");
  }
  return cfg;
}

RunConfig parse_args(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Variance-based uncertainty bounds: figure sweeps, comparisons and checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> tol_specs;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("-o,--output", cfg.output_path, "write the document here instead of stdout");
    sub->add_option("--tol", tol_specs, "tolerance override, key=value")->take_all();
  };
  auto* fig1 = app.add_subcommand("fig1", "|a| sweep on the two-observable fixture");
  fig1->add_option("--grid-points", cfg.grid_points);
  common(fig1);
  auto* fig2 = app.add_subcommand("fig2", "theta sweep on the four-observable qubit fixture");
  fig2->add_option("--grid-points", cfg.grid_points);
  fig2->add_option("--theta-min", cfg.theta_min);
  fig2->add_option("--theta-max", cfg.theta_max);
  common(fig2);
  auto* compare = app.add_subcommand("compare", "evaluate every bound on one instance document");
  compare->add_option("-i,--input", cfg.input_path, "instance JSON (default: stdin)");
  common(compare);
  for (const char* name : {"verify", "random-suite"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "verify"
                                             ? "check identities and bounds on random instances"
                                             : "tabulate bounds on random instances");
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--instances", cfg.instances);
    common(sub);
  }
  auto* fixture = app.add_subcommand("fixture", "export an embedded fixture");
  fixture->add_option("name", cfg.fixture_name, "fig1 or fig2")->required();
  common(fixture);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {};
  } catch (const CLI::ParseError& e) {
    throw Error(Errc::config_error, e.what());
  }
  cfg.command = app.get_subcommands().front()->get_name();
  for (const auto& spec : tol_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw Error(Errc::config_error, "tolerance must be key=value");
    try {
      cfg.tolerances[spec.substr(0, eq)] = std::stod(spec.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(Errc::config_error, "bad tolerance value in '" + spec + "'");
    }
  }
  return cfg;
}

int run(const RunConfig& raw, std::istream& in, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = normalized(raw);
  Document doc;
  if (cfg.command == "fig1") {
    doc = run_fig1(cfg, err);
  } else if (cfg.command == "fig2") {
    doc = run_fig2(cfg, err);
  } else if (cfg.command == "verify") {
    doc = run_verify(cfg, err);
  } else if (cfg.command == "random-suite") {
    doc = run_random_suite(cfg, err);
  } else if (cfg.command == "compare") {
    doc = run_compare(cfg, in, err);
  } else {
    doc = run_fixture(cfg);
  }
  emit(cfg, doc, out);
  return doc.code;
}

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
         std::ostream& err) {
  try {
    const RunConfig cfg = parse_args(argc, argv, out);
    if (cfg.command.empty()) return kOk;
    return run(cfg, in, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::invariant_violation ? kInvariantViolation : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace uncertainty::cli
