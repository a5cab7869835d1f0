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

#include "ppiso/types.hpp"

namespace ppiso {

/// Defect operators D_T = (I - T*T)^{1/2}, D_T* = (I - TT*)^{1/2} of a
/// contraction, together with orthonormal bases of their ranges. The bases
/// fix the coordinates in which characteristic functions are reported, so
/// the same DefectData must be threaded through any comparison.
struct DefectData {
  ComplexMatrix d_t;
  ComplexMatrix d_tstar;
  ComplexMatrix basis_dt;      // n x dim(D_T), orthonormal columns
  ComplexMatrix basis_dtstar;  // n x dim(D_T*), orthonormal columns
};

ComplexMatrix adjoint(const ComplexMatrix& a);

/// Largest singular value; 0 for empty matrices.
double spectral_norm(const ComplexMatrix& a);

/// Hermitian PSD square root. Eigenvalues in [-atol, 0) are clamped to 0;
/// anything below -atol raises negative_eigenvalue.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& a, const Tolerance& tol);

/// Orthogonal projection onto the numerical range of `a` (singular values
/// above tol.atol).
ComplexMatrix range_projection(const ComplexMatrix& a, const Tolerance& tol);

/// Orthonormal basis of the numerical range of `a`: left singular vectors
/// for singular values above tol.atol, ordered by descending singular value
/// and phase-normalized on the first significant entry so repeated runs
/// produce identical columns.
ComplexMatrix basis_of_range(const ComplexMatrix& a, const Tolerance& tol);

bool is_projection(const ComplexMatrix& p, const Tolerance& tol);
bool is_isometry(const ComplexMatrix& a, const Tolerance& tol);
bool is_unitary(const ComplexMatrix& a, const Tolerance& tol);

/// A is a partial isometry iff AA*A = A.
bool is_partial_isometry(const ComplexMatrix& a, const Tolerance& tol);

/// Rejects non-contractions instead of renormalizing them; a silently
/// rescaled input would corrupt every downstream characteristic-function
/// value.
DefectData defect(const ComplexMatrix& t, const Tolerance& tol);

}  // namespace ppiso
