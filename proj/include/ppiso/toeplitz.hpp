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

#include <array>
#include <string>
#include <vector>

#include "ppiso/symbols.hpp"
#include "ppiso/types.hpp"

namespace ppiso {

/// Leading N x N block compression of the Toeplitz operator of a symbol in
/// the monomial basis: block (i, j) is the coefficient of degree i - j.
struct TruncatedToeplitz {
  LaurentSymbol symbol;
  int n_blocks = 0;
  ComplexMatrix matrix;  // (N * dim_codomain) x (N * dim_domain)
};

struct ConditionDiagnostic {
  std::string condition;
  double residual = 0.0;
  std::array<int, 2> witness_degrees{0, 0};
};

/// The condition battery deciding whether the Toeplitz operator of a banded
/// symbol is a partial isometry: the symbol is a partial isometry pointwise,
/// the analytic and co-analytic Gram products are constant, and positive and
/// negative coefficients annihilate each other on both sides.
struct ConditionReport {
  bool is_pi_ae = false;
  bool plus_gram_constant = false;
  bool minus_gram_constant = false;
  bool cross_left = false;   // phi_m* phi_{-n} = 0 for m, n >= 1
  bool cross_right = false;  // phi_{-n} phi_m* = 0 for m, n >= 1
  bool verdict = false;
  std::vector<ConditionDiagnostic> diagnostics;
};

enum class ScalarToeplitzClass { Isometry, CoIsometry, NotPartialIsometry };

TruncatedToeplitz truncate(const LaurentSymbol& phi, int n_blocks);

/// Brute-force referee. With band [-p, q] the truncation at
/// N = 3(p+q) + p + 8 reproduces the infinite operator exactly on block
/// columns j <= N - 1 - 3(p+q): three applications of a band-(p+q) operator
/// cannot reach the artificial top edge from there, and the bottom edge is
/// the genuine analytic projection. The partial-isometry identity is tested
/// on exactly those columns. `extra_blocks` enlarges N for stability checks.
bool oracle_is_partial_isometry(const LaurentSymbol& phi, const Tolerance& tol,
                                int extra_blocks = 0);

/// Evaluates the conditions in exact coefficient arithmetic; finite support
/// makes "constant a.e." decidable. Diagnostics carry each condition's worst
/// residual and witnessing degree pair.
ConditionReport partial_isometry_conditions(const LaurentSymbol& phi, const Tolerance& tol);

/// Checks that theta and psi are inner, theta_m psi_n* = 0 for m, n >= 1,
/// phi = theta psi* as symbols, and that the truncated matrix of phi agrees
/// with the composed truncations on truncation-exact columns.
bool verify_factorization(const LaurentSymbol& theta, const LaurentSymbol& psi,
                          const LaurentSymbol& phi, const Tolerance& tol);

/// Scalar symbols that are unimodular a.e.: purely analytic support gives an
/// isometry, purely co-analytic support a co-isometry, and mixed support is
/// never a partial isometry. Each classification is confirmed by the oracle.
ScalarToeplitzClass scalar_dichotomy(const LaurentSymbol& phi, const Tolerance& tol);

}  // namespace ppiso
