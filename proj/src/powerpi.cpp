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

#include "ppiso/powerpi.hpp"

#include <string>

#include "ppiso/core.hpp"

namespace ppiso {

ProjectionChain projection_chain(const ComplexMatrix& t, const Tolerance& tol) {
  if (t.rows() != t.cols()) raise(errc::not_square, "projection_chain needs a square matrix");
  const Index n = t.rows();
  ProjectionChain chain;
  chain.e.push_back(ComplexMatrix::Identity(n, n));
  chain.f.push_back(ComplexMatrix::Identity(n, n));
  for (int k = 1; k <= static_cast<int>(n) + 1; ++k) {
    ComplexMatrix e_next = t.adjoint() * chain.e.back() * t;
    ComplexMatrix f_next = t * chain.f.back() * t.adjoint();
    if (spectral_norm(e_next - chain.e.back()) <= tol.atol &&
        spectral_norm(f_next - chain.f.back()) <= tol.atol) {
      chain.stabilization_index = k - 1;
      return chain;
    }
    chain.e.push_back(std::move(e_next));
    chain.f.push_back(std::move(f_next));
  }
  chain.stabilization_index = static_cast<int>(chain.e.size()) - 1;
  return chain;
}

bool is_power_partial_isometry(const ComplexMatrix& t, const Tolerance& tol) {
  if (t.rows() != t.cols()) raise(errc::not_square, "is_power_partial_isometry needs a square matrix");
  ComplexMatrix pw = t;
  for (Index k = 0; k <= t.rows(); ++k) {
    if (!is_partial_isometry(pw, tol)) return false;
    pw = pw * t;
  }
  return true;
}

namespace {

void require_ppi(const ComplexMatrix& t, const Tolerance& tol, const char* who) {
  if (!is_power_partial_isometry(t, tol))
    raise(errc::not_power_partial_isometry, std::string(who) + ": some power fails the partial-isometry identity");
}

}  // namespace

bool chain_identities_hold(const ComplexMatrix& t, const Tolerance& tol) {
  require_ppi(t, tol, "chain_identities_hold");
  ProjectionChain c = projection_chain(t, tol);
  const int kk = c.stabilization_index;
  for (int k = 0; k <= kk; ++k) {
    for (int l = 0; l <= kk; ++l) {
      if (spectral_norm(c.e_at(k) * c.e_at(l) - c.e_at(l) * c.e_at(k)) > tol.atol) return false;
      if (spectral_norm(c.f_at(k) * c.f_at(l) - c.f_at(l) * c.f_at(k)) > tol.atol) return false;
      if (spectral_norm(c.e_at(k) * c.f_at(l) - c.f_at(l) * c.e_at(k)) > tol.atol) return false;
    }
    if (spectral_norm(t * c.e_at(k + 1) - c.e_at(k) * t) > tol.atol) return false;
    if (spectral_norm(t * c.f_at(k) - c.f_at(k + 1) * t) > tol.atol) return false;
  }
  return true;
}

HWDecomposition halmos_wallen_decompose(const ComplexMatrix& t, const Tolerance& tol) {
  require_ppi(t, tol, "halmos_wallen_decompose");
  ProjectionChain c = projection_chain(t, tol);
  const Index n = t.rows();
  const int kk = c.stabilization_index;

  HWDecomposition hw;
  hw.unitary_basis = basis_of_range(c.e_at(kk) * c.f_at(kk), tol);

  Index total = hw.unitary_basis.cols();
  for (int k = 1; k <= static_cast<int>(n); ++k) {
    ComplexMatrix g = ComplexMatrix::Zero(n, n);
    for (int m = 1; m <= k; ++m)
      g += (c.e_at(k - m) - c.e_at(k - m + 1)) * (c.f_at(m - 1) - c.f_at(m));
    ComplexMatrix basis = basis_of_range(g, tol);
    if (basis.cols() == 0) continue;
    if (basis.cols() % k != 0)
      raise(errc::incomplete_decomposition,
            "dim H_" + std::to_string(k) + " = " + std::to_string(basis.cols()) +
                " is not a multiple of the index");
    total += basis.cols();
    hw.truncated_parts[k] = std::move(basis);
  }

  if (total != n)
    raise(errc::incomplete_decomposition,
          "subspace dimensions sum to " + std::to_string(total) + " of " + std::to_string(n));

  // The parts come from mutually orthogonal projections; verify the
  // assembled basis is orthonormal before anyone trusts it.
  ComplexMatrix all(n, total);
  Index at = 0;
  all.middleCols(at, hw.unitary_basis.cols()) = hw.unitary_basis;
  at += hw.unitary_basis.cols();
  for (const auto& [k, b] : hw.truncated_parts) {
    all.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  if (spectral_norm(all.adjoint() * all - ComplexMatrix::Identity(total, total)) > tol.atol)
    raise(errc::incomplete_decomposition, "assembled basis is not orthonormal at tolerance");

  return hw;
}

std::pair<ComplexMatrix, ComplexMatrix> truncated_defect_spaces(const ComplexMatrix& t, int k,
                                                                const Tolerance& tol) {
  if (k < 1) throw std::invalid_argument("truncated_defect_spaces: k must be positive");
  require_ppi(t, tol, "truncated_defect_spaces");
  ProjectionChain c = projection_chain(t, tol);
  ComplexMatrix dt = (c.e_at(0) - c.e_at(1)) * (c.f_at(k - 1) - c.f_at(k));
  ComplexMatrix dtstar = (c.e_at(k - 1) - c.e_at(k)) * (c.f_at(0) - c.f_at(1));
  return {basis_of_range(dt, tol), basis_of_range(dtstar, tol)};
}

ComplexMatrix truncated_shift(int k, int multiplicity) {
  if (k < 1 || multiplicity < 1)
    throw std::invalid_argument("truncated_shift: k and multiplicity must be positive");
  const Index n = static_cast<Index>(k) * multiplicity;
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  for (int block = 0; block + 1 < k; ++block)
    for (int copy = 0; copy < multiplicity; ++copy)
      j((block + 1) * multiplicity + copy, block * multiplicity + copy) = 1.0;
  return j;
}

}  // namespace ppiso
