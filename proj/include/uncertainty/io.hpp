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

#ifndef UNCERTAINTY_IO_HPP
#define UNCERTAINTY_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "uncertainty/experiments.hpp"

// Document formats. Complex numbers are [re, im] arrays (a bare number is
// read as a real value); matrices are row-major arrays of rows. Numbers are
// written with 12 significant digits.

namespace uncertainty::io {

using Json = nlohmann::ordered_json;

/// %.12g, C locale.
std::string format_number(double v);

/// Rounds to 12 significant digits so JSON output matches CSV precision.
double round_output(double v);

Json to_json(Complex<double> z);
Json to_json(const CVector<double>& v);
Json to_json(const CMatrix<double>& m);
Json to_json(const Fixture& fx);
Json to_json(const BoundsReport& report);
Json to_json(const SweepResult& sweep);

Complex<double> complex_from_json(const Json& j);
CVector<double> vector_from_json(const Json& j);
CMatrix<double> matrix_from_json(const Json& j);

/// An instance document for the compare command:
///   state        {"ket": [...]} or {"rho": [[...]]}
///   observables  list of matrices
///   weights      optional, defaults to all ones
///   params       optional {"given", "a", "b", "p", "q", "mode"}
///   matching_cases optional list of {"given", "a", "b", "p", "q"}
///   mp           optional {"sign": "+"|"-"|"auto", "perp": [...]}
struct Instance {
  State<double> state;
  std::vector<Observable<double>> observables;
  WeightVector<double> weights;
  CompareParams params;
};

/// Throws Error(input_schema_error) on malformed documents; validation
/// failures of the contents keep their own codes.
Instance instance_from_json(const Json& j);

std::string to_csv(const SweepResult& sweep);

/// Writes through a sibling temporary file and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace uncertainty::io

#endif  // UNCERTAINTY_IO_HPP
