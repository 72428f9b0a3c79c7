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

#ifndef UNCERTAINTY_CLI_HPP
#define UNCERTAINTY_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace uncertainty::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kInvariantViolation = 2;

/// Environment variable naming the directory outputs go to when --output is absent.
inline constexpr const char* kOutputDirEnv = "UNCERTAINTY_OUTPUT_DIR";

struct RunConfig {
  std::string command;  // fig1, fig2, compare, verify, random-suite, fixture
  std::size_t grid_points = 0;  // 0 selects the command default
  double theta_min = 0.0;
  double theta_max = 3.14159265358979323846;
  std::uint64_t seed = 42;
  std::size_t instances = 1000;
  std::string format;  // csv | json; empty selects the command default
  std::string output_path;
  std::string input_path;
  std::string fixture_name;
  /// sandwich, identity, saturation, hierarchy
  std::map<std::string, double> tolerances;

  double tolerance(const std::string& key) const;
};

/// Parses argv; throws Error(config_error) on bad flags. The returned
/// command is empty when help was printed to `out`.
RunConfig parse_args(int argc, const char* const* argv, std::ostream& out);

/// Validates the config and fills command defaults.
RunConfig normalized(RunConfig cfg);

/// Executes one command, writing the document to `out` (or to the output
/// file) and diagnostics to `err`.
int run(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);

/// parse_args + run with error-to-exit-code mapping.
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
         std::ostream& err);

}  // namespace uncertainty::cli

#endif  // UNCERTAINTY_CLI_HPP
