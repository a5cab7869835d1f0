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

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "ppiso/charfn.hpp"
#include "ppiso/core.hpp"
#include "ppiso/powerpi.hpp"
#include "ppiso/symbols.hpp"
#include "ppiso/types.hpp"

namespace ppiso::testing {

using Rng = std::mt19937_64;

inline ComplexMatrix random_gaussian(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

inline ComplexMatrix random_unitary(Rng& rng, Index n) {
  if (n == 0) return ComplexMatrix(0, 0);
  ComplexMatrix g = random_gaussian(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    Complex d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline ComplexMatrix random_contraction(Rng& rng, Index n) {
  ComplexMatrix u = random_unitary(rng, n);
  ComplexMatrix v = random_unitary(rng, n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd s(n);
  for (Index i = 0; i < n; ++i) s(i) = unif(rng);
  return u * s.asDiagonal() * v.adjoint();
}

inline ComplexMatrix random_hermitian_psd(Rng& rng, Index n) {
  ComplexMatrix g = random_gaussian(rng, n, n);
  return g * g.adjoint() / static_cast<double>(n);
}

/// A power partial isometry with known structure: U (V + J_{k_1} + ... ) U*.
struct PpiInstance {
  ComplexMatrix t;
  int unitary_dim = 0;
  std::map<int, int> profile;  // shift index -> total dimension across copies
};

inline PpiInstance random_power_partial_isometry(Rng& rng, int max_dim) {
  std::uniform_int_distribution<int> pick_u(0, 3);
  std::uniform_int_distribution<int> pick_k(1, 4);
  PpiInstance inst;
  inst.unitary_dim = pick_u(rng);
  std::vector<ComplexMatrix> blocks;
  if (inst.unitary_dim > 0) blocks.push_back(random_unitary(rng, inst.unitary_dim));
  int used = inst.unitary_dim;
  int parts = 0;
  while (true) {
    int k = pick_k(rng);
    if (used + k > max_dim) {
      if (parts > 0) break;
      k = std::max(1, max_dim - used);
    }
    blocks.push_back(truncated_shift(k, 1));
    inst.profile[k] += k;
    used += k;
    ++parts;
    std::uniform_int_distribution<int> more(0, 2);
    if (used >= max_dim || more(rng) == 0) break;
  }
  ComplexMatrix d = direct_sum(blocks);
  ComplexMatrix u = random_unitary(rng, d.rows());
  inst.t = u * d * u.adjoint();
  return inst;
}

/// Partition `total` columns into `parts` consecutive groups, each possibly
/// empty except the last which gets at least `last_min`.
inline std::vector<int> random_partition(Rng& rng, int total, int parts, int last_min) {
  std::vector<int> sizes(parts, 0);
  sizes[parts - 1] = last_min;
  int left = total - last_min;
  std::uniform_int_distribution<int> pick(0, parts - 1);
  for (int i = 0; i < left; ++i) ++sizes[pick(rng)];
  return sizes;
}

/// Analytic polynomial with degrees in [1, degree], every coefficient a
/// partial isometry, mutually orthogonal initial and final spaces, and a
/// nonzero top coefficient. Satisfies the model hypotheses by construction.
inline LaurentSymbol random_valid_theta(Rng& rng, int degree, Index dim_domain,
                                        Index dim_codomain) {
  const int total = static_cast<int>(std::min(dim_domain, dim_codomain));
  std::uniform_int_distribution<int> pick_rank(1, total);
  int used = pick_rank(rng);  // columns consumed by theta_1..theta_degree
  std::vector<int> ranks = random_partition(rng, used, degree, 1);
  ComplexMatrix v = random_unitary(rng, dim_domain);
  ComplexMatrix w = random_unitary(rng, dim_codomain);
  LaurentSymbol theta(dim_domain, dim_codomain);
  int at = 0;
  for (int m = 1; m <= degree; ++m) {
    if (ranks[m - 1] == 0) continue;
    ComplexMatrix coeff =
        w.middleCols(at, ranks[m - 1]) * v.middleCols(at, ranks[m - 1]).adjoint();
    theta.set_coeff(m, coeff);
    at += ranks[m - 1];
  }
  return theta;
}

/// Inner pair (theta, psi) over a common domain with theta_m psi_n* = 0 for
/// m, n >= 1, plus the induced symbol phi = theta psi*. The shared domain
/// splits into columns feeding theta's positive degrees, psi's positive
/// degrees, and both constant terms.
struct FactorablePair {
  LaurentSymbol theta;  // common -> codomain, inner
  LaurentSymbol psi;    // common -> domain, inner
  LaurentSymbol phi;    // domain -> codomain
};

inline FactorablePair random_factorable_symbol(Rng& rng, int max_degree, Index max_dim) {
  std::uniform_int_distribution<int> pick_dim(1, static_cast<int>(max_dim));
  std::uniform_int_distribution<int> pick_deg(0, max_degree);
  const Index f = pick_dim(rng);
  const Index d = f + std::uniform_int_distribution<int>(0, static_cast<int>(max_dim - f))(rng);
  const Index e = f + std::uniform_int_distribution<int>(0, static_cast<int>(max_dim - f))(rng);
  const int k_theta = pick_deg(rng);
  const int k_psi = pick_deg(rng);

  // Split the f common columns: x feeds theta degrees >= 1, y feeds psi
  // degrees >= 1, the rest is shared by both constant terms.
  std::uniform_int_distribution<int> pick_cols(0, static_cast<int>(f));
  int x = k_theta == 0 ? 0 : pick_cols(rng);
  int y = k_psi == 0 ? 0 : std::uniform_int_distribution<int>(0, static_cast<int>(f) - x)(rng);

  ComplexMatrix vc = random_unitary(rng, f);
  ComplexMatrix wt = random_unitary(rng, e);
  ComplexMatrix wp = random_unitary(rng, d);

  LaurentSymbol theta(f, e);
  LaurentSymbol psi(f, d);
  auto assemble = [&](LaurentSymbol& s, const ComplexMatrix& w, int own, int own_start,
                      int k_max) {
    // own columns spread over degrees 1..k_max, the remainder lands at 0
    std::vector<int> ranks =
        k_max == 0 ? std::vector<int>{} : random_partition(rng, own, k_max, own > 0 ? 1 : 0);
    int at = own_start;
    for (int m = 1; m <= k_max; ++m) {
      if (ranks[m - 1] == 0) continue;
      s.add_coeff(m, ComplexMatrix(w.middleCols(at, ranks[m - 1]) *
                                   vc.middleCols(at, ranks[m - 1]).adjoint()));
      at += ranks[m - 1];
    }
    // constant term: all columns not owned by this factor's positive degrees
    for (int c = 0; c < static_cast<int>(f); ++c) {
      if (c >= own_start && c < own_start + own) continue;
      s.add_coeff(0, ComplexMatrix(w.col(c) * vc.col(c).adjoint()));
    }
  };
  assemble(theta, wt, x, 0, k_theta);
  assemble(psi, wp, y, x, k_psi);

  FactorablePair out;
  out.theta = theta;
  out.psi = psi;
  out.phi = symbol_multiply(theta, symbol_adjoint(psi));
  return out;
}

/// Rank-one ribbon phi(z) = u (sum_j w_j z^{n_j} v_j)^*: a shared left unit
/// vector against orthonormal right vectors with unit total weight. Pointwise
/// this is a partial isometry for every z on the circle no matter how the
/// degrees are placed, so it survives the a.e. screen; with two or more
/// occupied degrees the gram or cross conditions fail. Orientation is flipped
/// half the time.
inline LaurentSymbol random_ribbon_symbol(Rng& rng, int band, Index max_dim) {
  std::uniform_int_distribution<int> pick_dim(2, static_cast<int>(max_dim));
  const Index d = pick_dim(rng);
  const Index e = pick_dim(rng);
  ComplexMatrix left = random_unitary(rng, e);
  ComplexMatrix right = random_unitary(rng, d);
  const int terms = std::uniform_int_distribution<int>(1, static_cast<int>(std::min<Index>(d, 3)))(rng);

  std::vector<int> degrees;
  std::uniform_int_distribution<int> pick_degree(-band, band);
  while (static_cast<int>(degrees.size()) < terms) {
    int n = pick_degree(rng);
    if (std::find(degrees.begin(), degrees.end(), n) == degrees.end()) degrees.push_back(n);
  }

  std::uniform_real_distribution<double> unif(0.5, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  Eigen::VectorXd weights(terms);
  for (int j = 0; j < terms; ++j) weights(j) = unif(rng);
  weights /= weights.norm();

  LaurentSymbol phi(d, e);
  for (int j = 0; j < terms; ++j) {
    const double a = angle(rng);
    const Complex w = weights(j) * Complex(std::cos(a), std::sin(a));
    phi.add_coeff(degrees[j], ComplexMatrix(w * left.col(0) * right.col(j).adjoint()));
  }
  if (std::uniform_int_distribution<int>(0, 1)(rng)) return symbol_adjoint(phi);
  return phi;
}

/// Structured mutations used to produce disagreement candidates; the result
/// may or may not stay a partial isometry pointwise.
inline LaurentSymbol mutate_symbol(Rng& rng, const LaurentSymbol& phi) {
  LaurentSymbol out = phi;
  std::vector<int> degs = out.degrees();
  if (degs.empty()) return out;
  std::uniform_int_distribution<size_t> pick(0, degs.size() - 1);
  const int m = degs[pick(rng)];
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: {  // move a coefficient to a fresh degree inside the band
      std::uniform_int_distribution<int> deg(-2, 2);
      int target = deg(rng);
      for (int tries = 0; tries < 8 && (target == m); ++tries) target = deg(rng);
      if (target == m) target = m == 2 ? -2 : 2;
      ComplexMatrix c = out.coeff(m);
      out.set_coeff(m, ComplexMatrix::Zero(out.dim_codomain(), out.dim_domain()));
      out.add_coeff(target, c);
      break;
    }
    case 1: {  // shrink a coefficient
      out.set_coeff(m, ComplexMatrix(0.5 * out.coeff(m)));
      break;
    }
    default: {  // swap two coefficients
      const int l = degs[pick(rng)];
      ComplexMatrix cm = out.coeff(m), cl = out.coeff(l);
      out.set_coeff(m, cl);
      out.set_coeff(l, cm);
      break;
    }
  }
  return out;
}

}  // namespace ppiso::testing
