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

#include "ppiso/toeplitz.hpp"

#include <algorithm>

#include "ppiso/core.hpp"

namespace ppiso {

namespace {

void require_nonzero(const LaurentSymbol& phi, const char* who) {
  if (phi.empty()) raise(errc::zero_symbol, std::string(who) + " is undefined for the zero symbol");
}

int band_below(const LaurentSymbol& phi) { return std::max(0, -phi.min_degree()); }
int band_above(const LaurentSymbol& phi) { return std::max(0, phi.max_degree()); }

}  // namespace

TruncatedToeplitz truncate(const LaurentSymbol& phi, int n_blocks) {
  if (n_blocks < 1) throw std::invalid_argument("truncate: n_blocks must be positive");
  const Index d = phi.dim_domain();
  const Index e = phi.dim_codomain();
  TruncatedToeplitz out;
  out.symbol = phi;
  out.n_blocks = n_blocks;
  out.matrix = ComplexMatrix::Zero(e * n_blocks, d * n_blocks);
  for (const auto& [m, c] : phi.coeffs())
    for (int j = 0; j < n_blocks; ++j) {
      const int i = j + m;
      if (i >= 0 && i < n_blocks) out.matrix.block(Index(i) * e, Index(j) * d, e, d) = c;
    }
  return out;
}

bool oracle_is_partial_isometry(const LaurentSymbol& phi, const Tolerance& tol,
                                int extra_blocks) {
  require_nonzero(phi, "oracle_is_partial_isometry");
  const int p = band_below(phi);
  const int q = band_above(phi);
  const int n = 3 * (p + q) + p + 8 + extra_blocks;
  const ComplexMatrix m = truncate(phi, n).matrix;
  const ComplexMatrix resid = m * m.adjoint() * m - m;
  const Index d = phi.dim_domain();
  const Index checked = Index(n - 3 * (p + q)) * d;
  for (Index j = 0; j < checked; ++j)
    if (resid.col(j).norm() > tol.atol) return false;
  return true;
}

ConditionReport partial_isometry_conditions(const LaurentSymbol& phi, const Tolerance& tol) {
  require_nonzero(phi, "partial_isometry_conditions");
  ConditionReport report;

  auto [plus, minus] = analytic_split(phi);

  {
    LaurentSymbol triple = symbol_multiply(symbol_multiply(phi, symbol_adjoint(phi)), phi);
    ConditionDiagnostic diag{"is_pi_ae", 0.0, {0, 0}};
    for (int m : phi.degrees()) {
      double r = spectral_norm(triple.coeff(m) - phi.coeff(m));
      if (r > diag.residual) diag = {"is_pi_ae", r, {m, m}};
    }
    for (int m : triple.degrees()) {
      double r = spectral_norm(triple.coeff(m) - phi.coeff(m));
      if (r > diag.residual) diag = {"is_pi_ae", r, {m, m}};
    }
    report.is_pi_ae = diag.residual <= tol.atol;
    report.diagnostics.push_back(diag);
  }

  auto gram_constant = [&](const LaurentSymbol& gram, const char* name, bool& flag) {
    ConditionDiagnostic diag{name, 0.0, {0, 0}};
    for (int m : gram.degrees()) {
      if (m == 0) continue;
      double r = spectral_norm(gram.coeff(m));
      if (r > diag.residual) diag = {name, r, {m, m}};
    }
    flag = diag.residual <= tol.atol;
    report.diagnostics.push_back(diag);
  };
  gram_constant(symbol_multiply(symbol_adjoint(plus), plus), "plus_gram_constant",
                report.plus_gram_constant);
  gram_constant(symbol_multiply(minus, symbol_adjoint(minus)), "minus_gram_constant",
                report.minus_gram_constant);

  {
    ConditionDiagnostic left{"cross_left", 0.0, {0, 0}};
    ConditionDiagnostic right{"cross_right", 0.0, {0, 0}};
    for (const auto& [m, a] : phi.coeffs()) {
      if (m < 1) continue;
      for (const auto& [neg, b] : phi.coeffs()) {
        if (neg > -1) continue;
        double rl = spectral_norm(a.adjoint() * b);
        if (rl > left.residual) left = {"cross_left", rl, {m, -neg}};
        double rr = spectral_norm(b * a.adjoint());
        if (rr > right.residual) right = {"cross_right", rr, {m, -neg}};
      }
    }
    report.cross_left = left.residual <= tol.atol;
    report.cross_right = right.residual <= tol.atol;
    report.diagnostics.push_back(left);
    report.diagnostics.push_back(right);
  }

  report.verdict = report.is_pi_ae && report.plus_gram_constant && report.minus_gram_constant &&
                   report.cross_left && report.cross_right;
  return report;
}

bool verify_factorization(const LaurentSymbol& theta, const LaurentSymbol& psi,
                          const LaurentSymbol& phi, const Tolerance& tol) {
  if (theta.min_degree() < 0 || psi.min_degree() < 0)
    raise(errc::not_analytic, "verify_factorization needs analytic factors");
  if (!is_inner(theta, tol) || !is_inner(psi, tol)) return false;

  for (const auto& [m, a] : theta.coeffs()) {
    if (m < 1) continue;
    for (const auto& [n_deg, b] : psi.coeffs()) {
      if (n_deg < 1) continue;
      if (spectral_norm(a * b.adjoint()) > tol.atol) return false;
    }
  }

  LaurentSymbol product = symbol_multiply(theta, symbol_adjoint(psi));
  if (symbol_distance(product, phi) > tol.atol) return false;

  // Truncation cross-check: the composed compressions reach only down to the
  // genuine analytic projection, so columns clear of the top edge by the
  // analytic bandwidth agree exactly.
  const int q_theta = band_above(theta);
  const int n = q_theta + band_above(psi) + 8;
  const ComplexMatrix lhs = truncate(phi, n).matrix;
  const ComplexMatrix rhs = truncate(theta, n).matrix * truncate(psi, n).matrix.adjoint();
  const Index checked = Index(n - q_theta) * phi.dim_domain();
  for (Index j = 0; j < checked; ++j)
    if ((lhs.col(j) - rhs.col(j)).norm() > tol.atol) return false;
  return true;
}

ScalarToeplitzClass scalar_dichotomy(const LaurentSymbol& phi, const Tolerance& tol) {
  if (phi.dim_domain() != 1 || phi.dim_codomain() != 1)
    raise(errc::not_scalar, "scalar_dichotomy needs a 1 x 1 symbol");
  require_nonzero(phi, "scalar_dichotomy");
  if (!is_partial_isometry_ae(phi, tol))
    raise(errc::not_partial_isometry_ae, "symbol values are not unimodular a.e.");

  const bool has_negative = phi.min_degree() < 0;
  const bool has_positive = phi.max_degree() > 0;
  if (has_negative && has_positive) return ScalarToeplitzClass::NotPartialIsometry;
  if (!oracle_is_partial_isometry(phi, tol)) return ScalarToeplitzClass::NotPartialIsometry;
  return has_negative ? ScalarToeplitzClass::CoIsometry : ScalarToeplitzClass::Isometry;
}

}  // namespace ppiso
