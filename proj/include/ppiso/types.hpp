// Copyright 2025-2026 The ppiso developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ppiso {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Single absolute tolerance used for every rank decision and equality
/// predicate, measured in spectral norm. All data handled here is
/// O(1)-scaled, so relative scaling would only add noise.
struct Tolerance {
  double atol = 1e-9;

  Tolerance() = default;
  explicit Tolerance(double a) : atol(a) {
    if (!(a > 0.0)) throw std::invalid_argument("Tolerance: atol must be positive");
  }
};

enum class errc {
  not_hermitian,
  negative_eigenvalue,
  not_square,
  not_contraction,
  dimension_mismatch,
  eval_domain,
  not_analytic,
  not_power_partial_isometry,
  incomplete_decomposition,
  invalid_theta,
  truncation_too_small,
  zero_symbol,
  not_scalar,
  not_partial_isometry_ae,
  parse_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace ppiso
