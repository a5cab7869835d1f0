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

#include "ppiso/symbols.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "ppiso/core.hpp"

namespace ppiso {

LaurentSymbol::LaurentSymbol(Index dim_domain, Index dim_codomain)
    : dim_domain_(dim_domain), dim_codomain_(dim_codomain) {
  if (dim_domain < 0 || dim_codomain < 0)
    throw std::invalid_argument("LaurentSymbol: dimensions must be nonnegative");
}

LaurentSymbol LaurentSymbol::monomial(int degree, const ComplexMatrix& coefficient) {
  LaurentSymbol s(coefficient.cols(), coefficient.rows());
  s.set_coeff(degree, coefficient);
  return s;
}

void LaurentSymbol::set_coeff(int degree, const ComplexMatrix& value) {
  if (value.rows() != dim_codomain_ || value.cols() != dim_domain_)
    raise(errc::dimension_mismatch, "coefficient shape does not match symbol dimensions");
  if (value.isZero(0.0))
    coeffs_.erase(degree);
  else
    coeffs_[degree] = value;
}

void LaurentSymbol::add_coeff(int degree, const ComplexMatrix& value) {
  auto it = coeffs_.find(degree);
  if (it == coeffs_.end()) {
    set_coeff(degree, value);
  } else {
    set_coeff(degree, it->second + value);
  }
}

ComplexMatrix LaurentSymbol::coeff(int degree) const {
  auto it = coeffs_.find(degree);
  if (it != coeffs_.end()) return it->second;
  return ComplexMatrix::Zero(dim_codomain_, dim_domain_);
}

std::vector<int> LaurentSymbol::degrees() const {
  std::vector<int> out;
  out.reserve(coeffs_.size());
  for (const auto& [m, c] : coeffs_) out.push_back(m);
  return out;
}

int LaurentSymbol::min_degree() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int LaurentSymbol::max_degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

LaurentSymbol symbol_adjoint(const LaurentSymbol& phi) {
  LaurentSymbol out(phi.dim_codomain(), phi.dim_domain());
  for (const auto& [m, c] : phi.coeffs()) out.set_coeff(-m, c.adjoint());
  return out;
}

LaurentSymbol symbol_multiply(const LaurentSymbol& phi, const LaurentSymbol& psi) {
  if (phi.dim_domain() != psi.dim_codomain())
    raise(errc::dimension_mismatch, "symbol_multiply: inner dimensions disagree");
  LaurentSymbol out(psi.dim_domain(), phi.dim_codomain());
  for (const auto& [j, a] : phi.coeffs())
    for (const auto& [l, b] : psi.coeffs()) out.add_coeff(j + l, a * b);
  return out;
}

ComplexMatrix symbol_eval(const LaurentSymbol& phi, Complex z) {
  const double r = std::abs(z);
  if (phi.min_degree() < 0) {
    if (std::abs(r - 1.0) > 1e-12)
      raise(errc::eval_domain, "symbol with negative degrees is only defined on |z| = 1");
  } else if (r > 1.0 + 1e-12) {
    raise(errc::eval_domain, "analytic symbol is only defined on |z| <= 1");
  }
  ComplexMatrix acc = ComplexMatrix::Zero(phi.dim_codomain(), phi.dim_domain());
  for (const auto& [m, c] : phi.coeffs()) acc += std::pow(z, m) * c;
  return acc;
}

std::pair<LaurentSymbol, LaurentSymbol> analytic_split(const LaurentSymbol& phi) {
  LaurentSymbol plus(phi.dim_domain(), phi.dim_codomain());
  LaurentSymbol minus(phi.dim_domain(), phi.dim_codomain());
  for (const auto& [m, c] : phi.coeffs()) {
    if (m >= 0) plus.set_coeff(m, c);
    if (m <= 0) minus.set_coeff(m, c);
  }
  return {plus, minus};
}

bool is_partial_isometry_ae(const LaurentSymbol& phi, const Tolerance& tol) {
  LaurentSymbol triple = symbol_multiply(symbol_multiply(phi, symbol_adjoint(phi)), phi);
  return symbol_distance(triple, phi) <= tol.atol;
}

bool is_inner(const LaurentSymbol& theta, const Tolerance& tol) {
  if (theta.min_degree() < 0)
    raise(errc::not_analytic, "is_inner needs an analytic symbol");
  LaurentSymbol gram = symbol_multiply(symbol_adjoint(theta), theta);
  LaurentSymbol id(theta.dim_domain(), theta.dim_domain());
  id.set_coeff(0, ComplexMatrix::Identity(theta.dim_domain(), theta.dim_domain()));
  return symbol_distance(gram, id) <= tol.atol;
}

bool is_purely_contractive(const LaurentSymbol& theta, const Tolerance& tol, int grid) {
  if (theta.min_degree() < 0)
    raise(errc::not_analytic, "is_purely_contractive needs an analytic symbol");
  if (grid < 1) throw std::invalid_argument("is_purely_contractive: grid must be positive");
  if (spectral_norm(theta.coeff(0)) >= 1.0 - tol.atol) return false;
  for (int j = 0; j < grid; ++j) {
    const double t = 2.0 * M_PI * j / grid;
    if (spectral_norm(symbol_eval(theta, Complex(std::cos(t), std::sin(t)))) > 1.0 + tol.atol)
      return false;
  }
  return true;
}

bool coefficient_orthogonality(const LaurentSymbol& theta, const Tolerance& tol) {
  for (const auto& [i, a] : theta.coeffs())
    for (const auto& [j, b] : theta.coeffs()) {
      if (i == j) continue;
      if (spectral_norm(a.adjoint() * b) > tol.atol) return false;
      if (spectral_norm(b * a.adjoint()) > tol.atol) return false;
    }
  return true;
}

LaurentSymbol symbol_direct_sum(const LaurentSymbol& a, const LaurentSymbol& b) {
  LaurentSymbol out(a.dim_domain() + b.dim_domain(), a.dim_codomain() + b.dim_codomain());
  std::set<int> support;
  for (const auto& [m, c] : a.coeffs()) support.insert(m);
  for (const auto& [m, c] : b.coeffs()) support.insert(m);
  for (int m : support) {
    ComplexMatrix block = ComplexMatrix::Zero(out.dim_codomain(), out.dim_domain());
    block.topLeftCorner(a.dim_codomain(), a.dim_domain()) = a.coeff(m);
    block.bottomRightCorner(b.dim_codomain(), b.dim_domain()) = b.coeff(m);
    out.set_coeff(m, block);
  }
  return out;
}

double symbol_distance(const LaurentSymbol& a, const LaurentSymbol& b) {
  if (a.dim_domain() != b.dim_domain() || a.dim_codomain() != b.dim_codomain())
    return std::numeric_limits<double>::infinity();
  std::set<int> support;
  for (const auto& [m, c] : a.coeffs()) support.insert(m);
  for (const auto& [m, c] : b.coeffs()) support.insert(m);
  double worst = 0.0;
  for (int m : support) worst = std::max(worst, spectral_norm(a.coeff(m) - b.coeff(m)));
  return worst;
}

}  // namespace ppiso
