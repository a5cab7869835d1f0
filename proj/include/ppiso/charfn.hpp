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

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppiso/symbols.hpp"
#include "ppiso/types.hpp"

namespace ppiso {

/// Outcome of a coincidence search between two analytic operator functions:
/// unitaries tau (domain side) and tau_star (codomain side) with
/// tau_star theta_m = phi_m tau for every coefficient. The solver is a
/// heuristic, so verdict false means "no witness found", not a proof.
struct CoincidenceResult {
  bool verdict = false;
  ComplexMatrix tau;
  ComplexMatrix tau_star;
  double residual = std::numeric_limits<double>::infinity();
  std::string note;
};

struct CoincideOptions {
  int restarts = 32;
  int iterations = 200;
  std::uint64_t seed = 0;
  /// Optional candidate pair tried before anything else, e.g. a witness
  /// known by construction.
  std::optional<std::pair<ComplexMatrix, ComplexMatrix>> warm_start;
};

/// Value of the characteristic function
///   theta_T(z) = [-T + z D_T* (I - z T*)^{-1} D_T] restricted to D_T,
/// reported as a matrix from basis_dt coordinates to basis_dtstar
/// coordinates of defect(t).
ComplexMatrix char_fn_eval(const ComplexMatrix& t, Complex z, const Tolerance& tol);

/// Taylor coefficients of the characteristic function in defect-basis
/// coordinates: degree 0 is -T restricted to D_T, degree m >= 1 is
/// D_T* T*^{m-1} D_T restricted to D_T. Exact for nilpotent T once n_max
/// exceeds the nilpotency index.
LaurentSymbol char_fn_coeffs(const ComplexMatrix& t, int n_max, const Tolerance& tol);

/// Closed form for a power partial isometry: the degree-k coefficient is
/// P_{H_k} T*^{k-1} restricted to D_T, one term per truncated part of the
/// Halmos-Wallen decomposition. Every coefficient is a partial isometry.
LaurentSymbol ppi_char_fn(const ComplexMatrix& t, const Tolerance& tol);

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& ts);

/// Alternating orthogonal-alignment search: fix tau and take tau_star as the
/// unitary polar factor of sum_m phi_m tau theta_m*, then fix tau_star and
/// take tau as the polar factor of sum_m phi_m* tau_star theta_m; iterate
/// from the identity and from random unitary starts, keep the best residual
/// (ties to the lowest restart index).
CoincidenceResult coincide(const LaurentSymbol& theta, const LaurentSymbol& phi,
                           const Tolerance& tol, const CoincideOptions& options = {});

}  // namespace ppiso
