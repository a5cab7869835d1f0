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
#include <utility>
#include <vector>

#include "ppiso/types.hpp"

namespace ppiso {

/// Finitely supported operator-valued Laurent polynomial
///   phi(e^{it}) = sum_m phi_m e^{imt},
/// phi_m : C^{dim_domain} -> C^{dim_codomain}. Coefficients that are exactly
/// the zero matrix are not stored, so support comparisons are well defined.
class LaurentSymbol {
 public:
  LaurentSymbol() = default;
  LaurentSymbol(Index dim_domain, Index dim_codomain);

  static LaurentSymbol monomial(int degree, const ComplexMatrix& coefficient);

  Index dim_domain() const { return dim_domain_; }
  Index dim_codomain() const { return dim_codomain_; }

  /// Stores `value` at `degree`; an exactly-zero matrix erases the slot.
  void set_coeff(int degree, const ComplexMatrix& value);
  /// Adds `value` into the slot at `degree`, re-canonicalizing afterwards.
  void add_coeff(int degree, const ComplexMatrix& value);

  bool has_coeff(int degree) const { return coeffs_.count(degree) != 0; }
  /// Coefficient at `degree`; the zero matrix when absent.
  ComplexMatrix coeff(int degree) const;

  const std::map<int, ComplexMatrix>& coeffs() const { return coeffs_; }
  std::vector<int> degrees() const;
  bool empty() const { return coeffs_.empty(); }
  int min_degree() const;  // 0 when empty
  int max_degree() const;  // 0 when empty

 private:
  Index dim_domain_ = 0;
  Index dim_codomain_ = 0;
  std::map<int, ComplexMatrix> coeffs_;
};

/// Coefficients of phi*: degree m of the result is adjoint(phi_{-m}).
LaurentSymbol symbol_adjoint(const LaurentSymbol& phi);

/// Pointwise product realized as coefficient convolution.
LaurentSymbol symbol_multiply(const LaurentSymbol& phi, const LaurentSymbol& psi);

/// sum_m phi_m z^m. Symbols with negative degrees are boundary functions and
/// only admit |z| = 1; analytic symbols admit |z| <= 1.
ComplexMatrix symbol_eval(const LaurentSymbol& phi, Complex z);

/// (phi_plus, phi_minus) with phi = phi_plus + phi_minus - phi_0; both halves
/// keep the constant term.
std::pair<LaurentSymbol, LaurentSymbol> analytic_split(const LaurentSymbol& phi);

/// phi phi* phi = phi as a Laurent identity. For trigonometric polynomials
/// this is equivalent to phi(e^{it}) being a partial isometry a.e. on the
/// circle.
bool is_partial_isometry_ae(const LaurentSymbol& phi, const Tolerance& tol);

/// theta* theta = I as a Laurent identity (analytic theta only).
bool is_inner(const LaurentSymbol& theta, const Tolerance& tol);

/// Boundary-grid contractivity plus strict contractivity at 0. A boundary
/// grid suffices because the operator norm of an analytic function attains
/// its maximum on the circle.
bool is_purely_contractive(const LaurentSymbol& theta, const Tolerance& tol, int grid = 64);

/// theta_i* theta_j = 0 and theta_j theta_i* = 0 for all stored i != j.
bool coefficient_orthogonality(const LaurentSymbol& theta, const Tolerance& tol);

/// Block-diagonal assembly: coefficient at m is diag(a_m, b_m) over the
/// union of the supports.
LaurentSymbol symbol_direct_sum(const LaurentSymbol& a, const LaurentSymbol& b);

/// max over the union support of the spectral norms of the coefficient
/// differences; infinity when the shapes differ.
double symbol_distance(const LaurentSymbol& a, const LaurentSymbol& b);

}  // namespace ppiso
