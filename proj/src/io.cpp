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

#include "uncertainty/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace uncertainty::io {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(Errc::input_schema_error, what);
}

Given given_from_json(const Json& j) {
  const std::string g = j.value("given", std::string("leading"));
  if (g == "leading") return Given::leading;
  if (g == "trailing") return Given::trailing;
  schema_error("given must be 'leading' or 'trailing'");
}

std::vector<Complex<double>> complex_list(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  const Json& v = j.at(key);
  // Lists hold complex entries; a bare number stands for a one-entry list.
  if (v.is_number()) return {complex_from_json(v)};
  if (!v.is_array()) schema_error(std::string("'") + key + "' must be a list of complex numbers");
  std::vector<Complex<double>> out;
  for (const auto& e : v) out.push_back(complex_from_json(e));
  return out;
}

Json complex_list_json(const std::vector<Complex<double>>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(to_json(z));
  return out;
}

const char* given_name(Given g) { return g == Given::leading ? "leading" : "trailing"; }

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round_output(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

Json to_json(Complex<double> z) { return Json::array({round_output(z.real()), round_output(z.imag())}); }

Json to_json(const CVector<double>& v) {
  Json out = Json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(to_json(Complex<double>(v(k))));
  return out;
}

Json to_json(const CMatrix<double>& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(to_json(Complex<double>(m(r, c))));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const Fixture& fx) {
  Json j;
  j["name"] = fx.name;
  if (const auto* ket = std::get_if<CVector<double>>(&fx.state_family)) {
    j["state"] = {{"ket", to_json(*ket)}, {"ket_printed", to_json(fx.printed_ket)}};
  } else {
    j["state"] = {{"theta_family", {{"phase", to_json(std::get<QubitThetaFamily>(fx.state_family).phase)}}}};
  }
  j["observables"] = Json::array();
  for (const auto& o : fx.observables) j["observables"].push_back(to_json(o.matrix()));
  j["weights"] = complex_list_json(fx.weights.x);
  j["param_cases"] = Json::array();
  for (const auto& np : fx.param_cases) {
    j["param_cases"].push_back({{"name", np.name},
                                {"group", np.group},
                                {"given", given_name(np.params.given)},
                                {"a", complex_list_json(np.params.a)},
                                {"b", complex_list_json(np.params.b)},
                                {"p", complex_list_json(np.params.p)},
                                {"q", complex_list_json(np.params.q)}});
  }
  return j;
}

Json to_json(const BoundsReport& report) {
  Json j;
  j["weighted_sov"] = round_output(report.weighted_sov);
  j["all_hold"] = report.all_hold();
  j["bounds"] = Json::array();
  for (const auto& e : report.bounds) {
    j["bounds"].push_back({{"name", e.name},
                           {"side", e.side == BoundSide::lower ? "lower" : "upper"},
                           {"value", round_output(e.value)},
                           {"reference", round_output(e.reference)},
                           {"holds", e.holds}});
  }
  j["residues"] = Json::object();
  for (const auto& [name, value] : report.residues) j["residues"][name] = round_output(value);
  return j;
}

Json to_json(const SweepResult& sweep) {
  Json j;
  Json grid = Json::array();
  for (double v : sweep.grid) grid.push_back(round_output(v));
  j[sweep.grid_name] = std::move(grid);
  for (const auto& [name, values] : sweep.columns) {
    Json col = Json::array();
    for (double v : values) col.push_back(round_output(v));
    j[name] = std::move(col);
  }
  return j;
}

Complex<double> complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  schema_error("complex numbers are [re, im] pairs");
}

CVector<double> vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) schema_error("expected a non-empty array of complex numbers");
  CVector<double> v(static_cast<Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Index>(k)) = complex_from_json(j[k]);
  return v;
}

CMatrix<double> matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) schema_error("expected a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  CMatrix<double> m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) schema_error("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = complex_from_json(j[r][c]);
    }
  }
  return m;
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) schema_error("instance must be an object");
  if (!j.contains("state") || !j.contains("observables")) {
    schema_error("instance needs 'state' and 'observables'");
  }
  const Json& sj = j.at("state");
  std::optional<State<double>> state;
  if (sj.contains("ket")) {
    state = State<double>::pure(vector_from_json(sj.at("ket")));
  } else if (sj.contains("rho")) {
    state = State<double>::mixed(matrix_from_json(sj.at("rho")));
  } else {
    schema_error("state needs 'ket' or 'rho'");
  }

  std::vector<Observable<double>> obs;
  if (!j.at("observables").is_array()) schema_error("observables must be an array");
  for (const auto& m : j.at("observables")) obs.emplace_back(matrix_from_json(m));
  if (obs.size() < 2) schema_error("need at least two observables");

  WeightVector<double> w = WeightVector<double>::ones(obs.size());
  if (j.contains("weights")) w.x = complex_list(j, "weights");

  CompareParams params;
  if (j.contains("params")) {
    const Json& p = j.at("params");
    params.decomposition = {given_from_json(p), complex_list(p, "a"), complex_list(p, "b"),
                            complex_list(p, "p"), complex_list(p, "q")};
    if (params.decomposition.a.empty() || params.decomposition.b.empty() ||
        params.decomposition.p.empty() || params.decomposition.q.empty()) {
      schema_error("params needs 'a', 'b', 'p' and 'q'");
    }
    const std::string mode = p.value("mode", std::string("bound"));
    if (mode == "bound") {
      params.mode = DecompositionMode::bound;
    } else if (mode == "saturation") {
      params.mode = DecompositionMode::saturation;
    } else {
      schema_error("mode must be 'bound' or 'saturation'");
    }
  }
  if (j.contains("matching_cases")) {
    for (const auto& c : j.at("matching_cases")) {
      if (!c.contains("a") || !c.contains("b") || !c.contains("p") || !c.contains("q")) {
        schema_error("matching case needs 'a', 'b', 'p' and 'q'");
      }
      params.matching_cases.push_back({given_from_json(c), complex_from_json(c.at("a")),
                                       complex_from_json(c.at("b")), complex_from_json(c.at("p")),
                                       complex_from_json(c.at("q"))});
    }
  }
  if (j.contains("mp")) {
    const Json& mp = j.at("mp");
    const std::string sign = mp.value("sign", std::string("auto"));
    if (sign == "+") {
      params.mp.sign = MpSign::plus;
    } else if (sign == "-") {
      params.mp.sign = MpSign::minus;
    } else if (sign == "auto") {
      params.mp.sign = MpSign::automatic;
    } else {
      schema_error("mp.sign must be '+', '-' or 'auto'");
    }
    if (mp.contains("perp")) params.mp.perp = vector_from_json(mp.at("perp"));
  }
  return {std::move(*state), std::move(obs), std::move(w), std::move(params)};
}

std::string to_csv(const SweepResult& sweep) {
  std::string out = sweep.grid_name;
  for (const auto& [name, values] : sweep.columns) out += "," + name;
  out += "\n";
  for (std::size_t r = 0; r < sweep.grid.size(); ++r) {
    out += format_number(sweep.grid[r]);
    for (const auto& [name, values] : sweep.columns) out += "," + format_number(values[r]);
    out += "\n";
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::config_error, "cannot open " + tmp.string());
    f << content;
    if (!f.flush()) throw Error(Errc::config_error, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(Errc::config_error, "cannot rename into " + target.string() + ": " + ec.message());
  }
}

}  // namespace uncertainty::io
