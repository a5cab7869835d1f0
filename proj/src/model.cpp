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

#include "ppiso/model.hpp"

#include <algorithm>
#include <string>

#include "ppiso/core.hpp"

namespace ppiso {

namespace {

void require_theta(const LaurentSymbol& theta, const Tolerance& tol, const char* who) {
  if (!validate_theta(theta, tol))
    raise(errc::invalid_theta, std::string(who) + ": symbol fails the model hypotheses");
}

// Final-space projections accumulated by degree:
// q[n] = I - sum_{m <= min(n, k)} theta_m theta_m*, n = 0 .. k.
std::vector<ComplexMatrix> final_space_complements(const LaurentSymbol& theta) {
  const Index e = theta.dim_codomain();
  const int k = theta.empty() ? 0 : theta.max_degree();
  std::vector<ComplexMatrix> q;
  q.push_back(ComplexMatrix::Identity(e, e));
  for (int m = 1; m <= k; ++m) {
    ComplexMatrix c = theta.coeff(m);
    q.push_back(q.back() - c * c.adjoint());
  }
  return q;
}

}  // namespace

bool validate_theta(const LaurentSymbol& theta, const Tolerance& tol) {
  if (!theta.empty() && theta.min_degree() < 1) return false;
  for (const auto& [m, c] : theta.coeffs())
    if (!is_partial_isometry(c, tol)) return false;
  if (!coefficient_orthogonality(theta, tol)) return false;
  ComplexMatrix gram = ComplexMatrix::Zero(theta.dim_domain(), theta.dim_domain());
  for (const auto& [m, c] : theta.coeffs()) gram += c.adjoint() * c;
  return spectral_norm(gram) <= 1.0 + tol.atol;
}

ComplexMatrix delta_theta(const LaurentSymbol& theta, const Tolerance& tol) {
  require_theta(theta, tol, "delta_theta");
  const Index d = theta.dim_domain();
  ComplexMatrix acc = ComplexMatrix::Identity(d, d);
  for (const auto& [m, c] : theta.coeffs()) acc -= c.adjoint() * c;
  return acc;
}

ComplexMatrix delta_theta_star(const LaurentSymbol& theta, const Tolerance& tol) {
  require_theta(theta, tol, "delta_theta_star");
  const Index e = theta.dim_codomain();
  ComplexMatrix acc = ComplexMatrix::Identity(e, e);
  for (const auto& [m, c] : theta.coeffs()) acc -= c * c.adjoint();
  return acc;
}

PolyVector defect_complement_apply(const LaurentSymbol& theta, const PolyVector& f,
                                   const Tolerance& tol) {
  require_theta(theta, tol, "defect_complement_apply");
  if (!f.coanalytic.empty())
    throw std::invalid_argument("defect_complement_apply expects a purely analytic argument");
  const int k = theta.empty() ? 0 : theta.max_degree();
  const std::vector<ComplexMatrix> q = final_space_complements(theta);
  PolyVector out;
  for (const auto& [n, a] : f.analytic) {
    if (n < 0) throw std::invalid_argument("analytic degrees must be nonnegative");
    ComplexVector v = (n == 0) ? a : ComplexVector(q[std::min(n, k)] * a);
    if (!v.isZero(0.0)) out.analytic[n] = v;
  }
  return out;
}

std::vector<bool> ModelTruncation::interior_mask() const {
  std::vector<bool> mask(static_cast<size_t>(dim()), false);
  for (const auto& slot : slots)
    if (slot.interior)
      for (Index i = 0; i < slot.dim; ++i) mask[static_cast<size_t>(slot.offset + i)] = true;
  return mask;
}

ModelTruncation build_model(const LaurentSymbol& theta, int n_trunc, const Tolerance& tol) {
  require_theta(theta, tol, "build_model");
  const int k = theta.empty() ? 0 : theta.max_degree();
  if (n_trunc < k + 2)
    raise(errc::truncation_too_small, "need n_trunc >= deg(theta) + 2");

  const Index e = theta.dim_codomain();
  const Index d = theta.dim_domain();
  const int n = n_trunc;

  const std::vector<ComplexMatrix> q = final_space_complements(theta);
  // Slot bases. Degree 0 carries the full codomain space; reuse q[k]'s basis
  // for every degree >= k.
  std::vector<ComplexMatrix> slot_basis(static_cast<size_t>(k) + 1);
  slot_basis[0] = ComplexMatrix::Identity(e, e);
  for (int m = 1; m <= k; ++m) slot_basis[static_cast<size_t>(m)] = basis_of_range(q[m], tol);
  ComplexMatrix delta = ComplexMatrix::Identity(d, d);
  for (const auto& [m, c] : theta.coeffs()) delta -= c.adjoint() * c;
  ComplexMatrix co_basis = basis_of_range(delta, tol);

  auto basis_at = [&](int degree) -> const ComplexMatrix& {
    return slot_basis[static_cast<size_t>(std::min(degree, k))];
  };

  ModelTruncation mt;
  mt.theta = theta;
  mt.n_trunc = n;

  Index model_dim = 0;
  for (int deg = 0; deg <= n; ++deg) {
    ModelSlot s;
    s.degree = deg;
    s.offset = model_dim;
    s.dim = basis_at(deg).cols();
    s.interior = deg <= n - k;
    model_dim += s.dim;
    mt.slots.push_back(s);
  }
  for (int deg = 1; deg <= n; ++deg) {
    ModelSlot s;
    s.degree = -deg;
    s.offset = model_dim;
    s.dim = co_basis.cols();
    s.interior = deg <= n - k;
    model_dim += s.dim;
    mt.slots.push_back(s);
  }

  const Index ambient = (static_cast<Index>(n) + 1) * e + static_cast<Index>(n) * d;
  mt.basis = ComplexMatrix::Zero(ambient, model_dim);
  mt.op = ComplexMatrix::Zero(model_dim, model_dim);
  mt.interior_dim = 0;

  auto ambient_row = [&](int degree) -> Index {
    return degree >= 0 ? static_cast<Index>(degree) * e
                       : (static_cast<Index>(n) + 1) * e + static_cast<Index>(-degree - 1) * d;
  };

  for (size_t i = 0; i < mt.slots.size(); ++i) {
    const ModelSlot& s = mt.slots[i];
    if (s.interior) mt.interior_dim += s.dim;
    const ComplexMatrix& b = s.degree >= 0 ? basis_at(s.degree) : co_basis;
    mt.basis.block(ambient_row(s.degree), s.offset, b.rows(), b.cols()) = b;
  }

  // Forward action. Analytic degree n -> n+1 through the next projection;
  // since the slot bases are nested, the block is just an overlap matrix.
  // Co-analytic degree -n -> -n+1 is the plain shift for n >= 2, and the
  // content of degree -1 leaves the model space.
  for (int deg = 0; deg < n; ++deg) {
    const ModelSlot& src = mt.slots[static_cast<size_t>(deg)];
    const ModelSlot& dst = mt.slots[static_cast<size_t>(deg) + 1];
    mt.op.block(dst.offset, src.offset, dst.dim, src.dim) =
        basis_at(deg + 1).adjoint() * basis_at(deg);
  }
  for (int deg = 2; deg <= n; ++deg) {
    const ModelSlot& src = mt.slots[static_cast<size_t>(n + deg)];
    const ModelSlot& dst = mt.slots[static_cast<size_t>(n + deg - 1)];
    mt.op.block(dst.offset, src.offset, dst.dim, src.dim) =
        ComplexMatrix::Identity(dst.dim, src.dim);
  }
  return mt;
}

bool model_is_power_partial_isometry(const ModelTruncation& mt, const Tolerance& tol) {
  const int k = mt.theta.empty() ? 0 : mt.theta.max_degree();
  const std::vector<bool> interior = mt.interior_mask();
  ComplexMatrix power = mt.op;
  for (int p = 1; p <= k + 2; ++p) {
    ComplexMatrix resid = power * power.adjoint() * power - power;
    for (Index j = 0; j < resid.cols(); ++j)
      if (interior[static_cast<size_t>(j)] && resid.col(j).norm() > tol.atol) return false;
    power = power * mt.op;
  }
  return true;
}

namespace {

// Defect projections of the truncated operator, restricted to interior
// slots. The truncation creates extra kernel directions at the outermost
// degrees; cutting to the interior removes exactly those, leaving the defect
// spaces of the untruncated model.
struct InteriorDefects {
  ComplexMatrix basis_d;      // model_dim x dim(D_T)
  ComplexMatrix basis_dstar;  // model_dim x dim(D_T*)
  ComplexMatrix d_sqrt;       // (I - op* op)^{1/2}
  ComplexMatrix dstar_sqrt;   // (I - op op*)^{1/2}
};

InteriorDefects interior_defects(const ModelTruncation& mt, const Tolerance& tol) {
  const Index dim = mt.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  ComplexMatrix g = id - mt.op.adjoint() * mt.op;
  ComplexMatrix gstar = id - mt.op * mt.op.adjoint();

  ComplexMatrix p_int = ComplexMatrix::Zero(dim, dim);
  const std::vector<bool> interior = mt.interior_mask();
  for (Index i = 0; i < dim; ++i)
    if (interior[static_cast<size_t>(i)]) p_int(i, i) = 1.0;

  InteriorDefects out;
  out.basis_d = basis_of_range(p_int * g * p_int, tol);
  out.basis_dstar = basis_of_range(p_int * gstar * p_int, tol);
  out.d_sqrt = hermitian_sqrt(range_projection(g, tol), tol);
  out.dstar_sqrt = hermitian_sqrt(range_projection(gstar, tol), tol);
  return out;
}

}  // namespace

CoincidenceResult model_char_fn_matches(const LaurentSymbol& theta, const ModelTruncation& mt,
                                        const Tolerance& tol) {
  const int k = theta.empty() ? 0 : theta.max_degree();
  InteriorDefects def = interior_defects(mt, tol);

  // Taylor coefficients of the model's characteristic function over the
  // interior defect bases; a couple of degrees past k double as a check
  // that nothing trails.
  LaurentSymbol model_symbol(def.basis_d.cols(), def.basis_dstar.cols());
  model_symbol.set_coeff(0, ComplexMatrix(def.basis_dstar.adjoint() * (-mt.op) * def.basis_d));
  ComplexMatrix power = ComplexMatrix::Identity(mt.dim(), mt.dim());
  std::vector<ComplexMatrix> ambient_coeff;  // index m-1 -> D_T* op*^{m-1} D_T
  for (int m = 1; m <= k + 2; ++m) {
    ambient_coeff.push_back(def.dstar_sqrt * power * def.d_sqrt);
    model_symbol.set_coeff(
        m, ComplexMatrix(def.basis_dstar.adjoint() * ambient_coeff.back() * def.basis_d));
    power = power * mt.op.adjoint();
  }

  // Explicit witness: tau maps a to sum_n theta_{n+1} a z^n plus the
  // delta_theta part at co-analytic degree -1; tau_star identifies the
  // degree-0 slot with the codomain space.
  const Index d = theta.dim_domain();
  const Index e = theta.dim_codomain();
  ComplexMatrix delta = ComplexMatrix::Identity(d, d);
  for (const auto& [m, c] : theta.coeffs()) delta -= c.adjoint() * c;

  ComplexMatrix tau_emb = ComplexMatrix::Zero(mt.dim(), d);
  ComplexMatrix tau_star_emb = ComplexMatrix::Zero(mt.dim(), e);
  for (const auto& slot : mt.slots) {
    if (slot.degree == 0) {
      tau_star_emb.block(slot.offset, 0, slot.dim, e) =
          mt.basis.block(0, slot.offset, e, slot.dim).adjoint();
    }
    if (slot.degree >= 0 && slot.degree + 1 <= k) {
      // slot coordinates of theta_{degree+1} a
      ComplexMatrix v = mt.basis
                            .block(static_cast<Index>(slot.degree) * e, slot.offset, e, slot.dim)
                            .adjoint() *
                        theta.coeff(slot.degree + 1);
      tau_emb.block(slot.offset, 0, slot.dim, d) = v;
    }
    if (slot.degree == -1 && slot.dim > 0) {
      ComplexMatrix w = mt.basis
                            .block((static_cast<Index>(mt.n_trunc) + 1) * e, slot.offset, d,
                                   slot.dim)
                            .adjoint() *
                        delta;
      tau_emb.block(slot.offset, 0, slot.dim, d) = w;
    }
  }

  CoincidenceResult result;
  if (def.basis_d.cols() != d || def.basis_dstar.cols() != e) {
    result.note = "interior defect dimensions do not match the symbol";
    return result;
  }

  ComplexMatrix tau_witness = (def.basis_d.adjoint() * tau_emb).adjoint();       // D_T -> E
  ComplexMatrix tau_star_witness = (def.basis_dstar.adjoint() * tau_star_emb).adjoint();

  double witness_residual =
      spectral_norm(tau_star_emb.adjoint() * (-mt.op) * tau_emb);  // degree 0 must vanish
  for (int m = 1; m <= k + 2; ++m) {
    ComplexMatrix lhs = tau_star_emb.adjoint() * ambient_coeff[static_cast<size_t>(m - 1)] * tau_emb;
    witness_residual = std::max(witness_residual, spectral_norm(lhs - theta.coeff(m)));
  }

  CoincideOptions options;
  options.warm_start = std::make_pair(tau_witness, tau_star_witness);
  CoincidenceResult found = coincide(model_symbol, theta, tol, options);

  result.verdict = found.verdict && witness_residual <= tol.atol &&
                   is_unitary(tau_witness, tol) && is_unitary(tau_star_witness, tol);
  result.tau = tau_witness;
  result.tau_star = tau_star_witness;
  result.residual = witness_residual;
  if (!found.verdict) result.note = "coincidence search residual " + std::to_string(found.residual);
  return result;
}

ModelDecomposition decompose_model(const LaurentSymbol& theta, const ModelTruncation& mt,
                                   const Tolerance& tol) {
  require_theta(theta, tol, "decompose_model");
  const int k = theta.empty() ? 0 : theta.max_degree();
  const Index e = theta.dim_codomain();
  const int n = mt.n_trunc;

  ComplexMatrix delta_star = ComplexMatrix::Identity(e, e);
  for (const auto& [m, c] : theta.coeffs()) delta_star -= c * c.adjoint();
  ComplexMatrix s_basis = basis_of_range(delta_star, tol);

  auto slot_block = [&](const ModelSlot& slot) {
    return mt.basis.block(static_cast<Index>(slot.degree) * e, slot.offset, e, slot.dim);
  };

  ModelDecomposition md;

  // H_s: the joint final-space complement at every analytic degree.
  md.h_s = ComplexMatrix::Zero(mt.dim(), s_basis.cols() * (static_cast<Index>(n) + 1));
  Index col = 0;
  for (const auto& slot : mt.slots) {
    if (slot.degree < 0) continue;
    md.h_s.block(slot.offset, col, slot.dim, s_basis.cols()) = slot_block(slot).adjoint() * s_basis;
    col += s_basis.cols();
  }

  // H_m: theta_m theta_m* directions at degrees 0 .. m-1.
  Index t_cols = 0;
  for (int m = 1; m <= k; ++m) {
    ComplexMatrix c = theta.coeff(m);
    ComplexMatrix u = basis_of_range(ComplexMatrix(c * c.adjoint()), tol);
    if (u.cols() == 0) continue;
    ComplexMatrix part = ComplexMatrix::Zero(mt.dim(), u.cols() * m);
    Index pcol = 0;
    for (int deg = 0; deg < m; ++deg) {
      const ModelSlot& slot = mt.slots[static_cast<size_t>(deg)];
      part.block(slot.offset, pcol, slot.dim, u.cols()) = slot_block(slot).adjoint() * u;
      pcol += u.cols();
    }
    t_cols += part.cols();
    md.h_m_parts[m] = std::move(part);
  }
  md.h_t = ComplexMatrix::Zero(mt.dim(), t_cols);
  col = 0;
  for (const auto& [m, part] : md.h_m_parts) {
    md.h_t.middleCols(col, part.cols()) = part;
    col += part.cols();
  }

  // H_b: the whole co-analytic side, already expressed in model coordinates.
  Index b_cols = 0;
  for (const auto& slot : mt.slots)
    if (slot.degree < 0) b_cols += slot.dim;
  md.h_b = ComplexMatrix::Zero(mt.dim(), b_cols);
  col = 0;
  for (const auto& slot : mt.slots) {
    if (slot.degree >= 0) continue;
    md.h_b.block(slot.offset, col, slot.dim, slot.dim) =
        ComplexMatrix::Identity(slot.dim, slot.dim);
    col += slot.dim;
  }

  const Index total = md.h_s.cols() + md.h_t.cols() + md.h_b.cols();
  if (total != mt.dim())
    raise(errc::incomplete_decomposition,
          "splitting spans " + std::to_string(total) + " of " + std::to_string(mt.dim()));
  return md;
}

namespace {

// Degree of the slot a model-coordinate column lives in (columns of the
// part matrices are supported on a single slot by construction).
int column_degree(const ModelTruncation& mt, const ComplexMatrix& columns, Index j) {
  for (Index i = 0; i < columns.rows(); ++i) {
    if (std::abs(columns(i, j)) > 1e-9) {
      for (const auto& slot : mt.slots)
        if (i >= slot.offset && i < slot.offset + slot.dim) return slot.degree;
    }
  }
  return 0;
}

}  // namespace

bool verify_diagonal_form(const ModelTruncation& mt, const ModelDecomposition& md,
                          const Tolerance& tol) {
  const int k = mt.theta.empty() ? 0 : mt.theta.max_degree();
  const int n = mt.n_trunc;

  const ComplexMatrix* parts[3] = {&md.h_s, &md.h_t, &md.h_b};
  // (a) no coupling between the three blocks on interior vectors.
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b || parts[b]->cols() == 0 || parts[a]->cols() == 0) continue;
      for (Index j = 0; j < parts[b]->cols(); ++j) {
        if (std::abs(column_degree(mt, *parts[b], j)) > n - k) continue;
        if ((parts[a]->adjoint() * (mt.op * parts[b]->col(j))).norm() > tol.atol) return false;
      }
    }

  // (b) forward shift on H_s: the column at degree deg maps to the column at
  // degree deg + 1 carrying the same direction; columns are laid out one
  // degree block at a time.
  const Index rs = md.h_s.cols() / (static_cast<Index>(n) + 1);
  for (Index j = 0; j < md.h_s.cols(); ++j) {
    ComplexVector image = mt.op * md.h_s.col(j);
    if (j + rs < md.h_s.cols()) {
      if ((image - md.h_s.col(j + rs)).norm() > tol.atol) return false;
    }
  }

  // (c) backward shift on H_b: degree -1 dies, degree -n moves to -n+1, and
  // the adjoint shifts down isometrically away from the bottom edge.
  const Index rb = (n > 0) ? md.h_b.cols() / static_cast<Index>(n) : 0;
  for (Index j = 0; j < md.h_b.cols(); ++j) {
    ComplexVector image = mt.op * md.h_b.col(j);
    if (j < rb) {
      if (image.norm() > tol.atol) return false;
    } else if ((image - md.h_b.col(j - rb)).norm() > tol.atol) {
      return false;
    }
    if (j + rb < md.h_b.cols()) {
      ComplexVector down = mt.op.adjoint() * md.h_b.col(j);
      if ((down - md.h_b.col(j + rb)).norm() > tol.atol) return false;
    }
  }

  // (d) nilpotency of index k on H_t.
  if (md.h_t.cols() > 0 && k >= 1) {
    ComplexMatrix o_t = md.h_t.adjoint() * mt.op * md.h_t;
    ComplexMatrix pw = ComplexMatrix::Identity(o_t.rows(), o_t.cols());
    for (int p = 0; p < k - 1; ++p) pw = pw * o_t;
    if (spectral_norm(pw) <= tol.atol) return false;  // (op|H_t)^{k-1} must survive
    if (spectral_norm(pw * o_t) > tol.atol) return false;
  }

  // (e) each H_m reduces op with nilpotency index m.
  for (const auto& [m, part] : md.h_m_parts) {
    if (part.cols() == 0) continue;
    ComplexMatrix images = mt.op * part;
    if (spectral_norm(images - part * (part.adjoint() * images)) > tol.atol) return false;
    ComplexMatrix o_m = part.adjoint() * images;
    ComplexMatrix pw = ComplexMatrix::Identity(o_m.rows(), o_m.cols());
    for (int p = 0; p < m; ++p) pw = pw * o_m;
    if (spectral_norm(pw) > tol.atol) return false;
  }
  return true;
}

}  // namespace ppiso
