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

#include <map>
#include <vector>

#include "ppiso/charfn.hpp"
#include "ppiso/symbols.hpp"
#include "ppiso/types.hpp"

namespace ppiso {

/// Polynomial element of the two-sided ambient space: an analytic part
/// sum_n a_n z^n (a_n in C^{dim codomain}) and a co-analytic part
/// sum_n b_n conj(z)^n, n >= 1 (b_n in C^{dim domain}).
struct PolyVector {
  std::map<int, ComplexVector> analytic;    // degree n >= 0 -> a_n
  std::map<int, ComplexVector> coanalytic;  // degree n >= 1 -> b_n
};

struct ModelSlot {
  int degree = 0;      // analytic slots >= 0, co-analytic slots < 0
  Index offset = 0;    // first model coordinate of the slot
  Index dim = 0;
  bool interior = false;  // |degree| <= n_trunc - deg(theta)
};

/// Truncation of the functional model built from a validated polynomial
/// symbol theta of degree k. Ambient coordinates stack the analytic degrees
/// 0..N (each a copy of the codomain space) followed by the co-analytic
/// degrees -1..-N (each a copy of the domain space). The model space is
/// spanned per degree slot:
///   degree 0          all of the codomain space,
///   degree n >= 1     range of I - sum_{m <= min(n,k)} theta_m theta_m*,
///   degree -n         range of I - sum_m theta_m* theta_m.
/// The operator moves every slot up by one degree, so columns of interior
/// slots agree exactly with the untruncated model.
struct ModelTruncation {
  LaurentSymbol theta;
  int n_trunc = 0;
  ComplexMatrix basis;  // ambient_dim x model_dim, orthonormal columns
  ComplexMatrix op;     // model_dim x model_dim
  Index interior_dim = 0;
  std::vector<ModelSlot> slots;

  Index dim() const { return op.rows(); }
  /// True for model coordinates belonging to interior slots.
  std::vector<bool> interior_mask() const;
};

/// Shift / nilpotent / backward-shift splitting of a model truncation.
/// Column blocks are expressed in model coordinates.
struct ModelDecomposition {
  ComplexMatrix h_s;
  ComplexMatrix h_t;
  ComplexMatrix h_b;
  std::map<int, ComplexMatrix> h_m_parts;  // index m -> columns of H_m
};

/// Admissible model symbols: analytic with all degrees >= 1, every
/// coefficient a partial isometry, coefficients mutually orthogonal on both
/// sides, and sum theta_m* theta_m a contraction.
bool validate_theta(const LaurentSymbol& theta, const Tolerance& tol);

/// Constant projection I - sum_m theta_m* theta_m on the domain space.
ComplexMatrix delta_theta(const LaurentSymbol& theta, const Tolerance& tol);

/// Constant projection I - sum_m theta_m theta_m* on the codomain space.
ComplexMatrix delta_theta_star(const LaurentSymbol& theta, const Tolerance& tol);

/// Closed form of (I - T_theta T_theta*) on an analytic polynomial: the
/// constant term passes through, degree n is hit by
/// I - sum_{m <= min(n,k)} theta_m theta_m*.
PolyVector defect_complement_apply(const LaurentSymbol& theta, const PolyVector& f,
                                   const Tolerance& tol);

ModelTruncation build_model(const LaurentSymbol& theta, int n_trunc, const Tolerance& tol);

/// Checks op^p op*^p op^p = op^p on every interior basis vector for
/// p = 1 .. deg(theta) + 2. Boundary columns are truncation artifacts and
/// excluded.
bool model_is_power_partial_isometry(const ModelTruncation& mt, const Tolerance& tol);

/// Computes the characteristic function of the model operator on the
/// interior-supported defect spaces and matches it against theta, both via
/// the coincidence solver and via the explicit witness
///   tau(a) = sum_n theta_{n+1} a z^n  (+)  delta_theta a conj(z).
/// The returned residual is the witness residual.
CoincidenceResult model_char_fn_matches(const LaurentSymbol& theta, const ModelTruncation& mt,
                                        const Tolerance& tol);

/// H_s: delta_theta_star directions at every analytic degree;
/// H_b: the whole co-analytic side;
/// H_m: theta_m theta_m* directions at analytic degrees 0..m-1;
/// H_t: the direct sum of the H_m.
ModelDecomposition decompose_model(const LaurentSymbol& theta, const ModelTruncation& mt,
                                   const Tolerance& tol);

/// Verifies the block-diagonal action: no coupling between H_s, H_t, H_b on
/// interior vectors; forward shift on H_s; backward shift on H_b; nilpotency
/// of index deg(theta) on H_t; each H_m invariant with (op|H_m)^m = 0.
bool verify_diagonal_form(const ModelTruncation& mt, const ModelDecomposition& md,
                          const Tolerance& tol);

}  // namespace ppiso
