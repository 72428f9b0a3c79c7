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

#ifndef UNCERTAINTY_ERROR_HPP
#define UNCERTAINTY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uncertainty {

enum class Errc {
  not_hermitian,
  bad_dimension,
  not_normalized,
  not_density_matrix,
  dimension_mismatch,
  non_real_expectation,
  kind_mismatch,
  empty_input,
  non_imaginary_commutator,
  mixed_state_unsupported,
  invalid_perp,
  not_qubit,
  negative_norm_square,
  singular_solve,
  constraint_violated,
  trivial_decomposition,
  length_mismatch,
  bad_indices,
  odd_count,
  bad_fixture_shape,
  bad_params,
  config_error,
  input_schema_error,
  invariant_violation,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::not_hermitian: return "NotHermitian";
    case Errc::bad_dimension: return "BadDimension";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::not_density_matrix: return "NotDensityMatrix";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::non_real_expectation: return "NonRealExpectation";
    case Errc::kind_mismatch: return "KindMismatch";
    case Errc::empty_input: return "EmptyInput";
    case Errc::non_imaginary_commutator: return "NonImaginaryCommutator";
    case Errc::mixed_state_unsupported: return "MixedStateUnsupported";
    case Errc::invalid_perp: return "InvalidPerp";
    case Errc::not_qubit: return "NotQubit";
    case Errc::negative_norm_square: return "NegativeNormSquare";
    case Errc::singular_solve: return "SingularSolve";
    case Errc::constraint_violated: return "ConstraintViolated";
    case Errc::trivial_decomposition: return "TrivialDecomposition";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::bad_indices: return "BadIndices";
    case Errc::odd_count: return "OddCount";
    case Errc::bad_fixture_shape: return "BadFixtureShape";
    case Errc::bad_params: return "BadParams";
    case Errc::config_error: return "ConfigError";
    case Errc::input_schema_error: return "InputSchemaError";
    case Errc::invariant_violation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace uncertainty

#endif  // UNCERTAINTY_ERROR_HPP
