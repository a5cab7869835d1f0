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

/// Initial and final projection chains E_k = T^{*k} T^k, F_k = T^k T^{*k},
/// stored up to the index at which both stop changing. Past that index the
/// accessors return the stabilized value.
struct ProjectionChain {
  std::vector<ComplexMatrix> e;  // E_0 .. E_K
  std::vector<ComplexMatrix> f;  // F_0 .. F_K
  int stabilization_index = 0;

  const ComplexMatrix& e_at(int k) const { return e[std::min<size_t>(k, e.size() - 1)]; }
  const ComplexMatrix& f_at(int k) const { return f[std::min<size_t>(k, f.size() - 1)]; }
};

/// Halmos-Wallen decomposition of a power partial isometry on a
/// finite-dimensional space: an orthonormal basis of the unitary part and,
/// per index k, an orthonormal basis of the truncated-shift part of index k.
/// Unilateral and backward shift parts are zero in finite dimensions.
struct HWDecomposition {
  ComplexMatrix unitary_basis;                   // n x dim(H_u)
  std::map<int, ComplexMatrix> truncated_parts;  // k -> n x dim(H_k), nonzero parts only

  std::map<int, int> dims() const {
    std::map<int, int> d;
    for (const auto& [k, b] : truncated_parts) d[k] = static_cast<int>(b.cols());
    return d;
  }
};

/// Chains are computed until a step changes neither chain, or k = dim + 1,
/// whichever comes first. The decreasing chains on a d-dimensional space
/// admit at most d strict decreases, so the cap loses nothing.
ProjectionChain projection_chain(const ComplexMatrix& t, const Tolerance& tol);

/// T^n (T^n)* T^n = T^n for n = 1 .. dim + 1.
bool is_power_partial_isometry(const ComplexMatrix& t, const Tolerance& tol);

/// Verifies the projection-chain identities of a power partial isometry:
/// E and F chains commute pairwise and with each other, TE_{k+1} = E_k T and
/// TF_k = F_{k+1} T, for all indices up to stabilization.
bool chain_identities_hold(const ComplexMatrix& t, const Tolerance& tol);

/// H_k is the range of sum_{n=1}^{k} (E_{k-n} - E_{k-n+1})(F_{n-1} - F_n);
/// H_u is the range of the stabilized product E_K F_K.
HWDecomposition halmos_wallen_decompose(const ComplexMatrix& t, const Tolerance& tol);

/// Orthonormal bases of the defect spaces of the index-k truncated part:
/// ranges of (E_0 - E_1)(F_{k-1} - F_k) and (E_{k-1} - E_k)(F_0 - F_1).
std::pair<ComplexMatrix, ComplexMatrix> truncated_defect_spaces(const ComplexMatrix& t, int k,
                                                                const Tolerance& tol);

/// Matrix of the truncated shift J_k on C^{multiplicity * k}, basis ordered
/// by (block index, copy index). J_1 = 0.
ComplexMatrix truncated_shift(int k, int multiplicity);

}  // namespace ppiso
