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

#include "ppiso/core.hpp"

#include <algorithm>
#include <cmath>

namespace ppiso {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::not_hermitian: return "NotHermitian";
    case errc::negative_eigenvalue: return "NegativeEigenvalue";
    case errc::not_square: return "NotSquare";
    case errc::not_contraction: return "NotContraction";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::eval_domain: return "EvalDomain";
    case errc::not_analytic: return "NotAnalytic";
    case errc::not_power_partial_isometry: return "NotPowerPartialIsometry";
    case errc::incomplete_decomposition: return "IncompleteDecomposition";
    case errc::invalid_theta: return "InvalidTheta";
    case errc::truncation_too_small: return "TruncationTooSmall";
    case errc::zero_symbol: return "ZeroSymbol";
    case errc::not_scalar: return "NotScalar";
    case errc::not_partial_isometry_ae: return "NotPartialIsometryAE";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

double spectral_norm(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

namespace {

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols()) raise(errc::not_square, std::string(who) + " needs a square matrix");
}

// Multiplies each column by a unit phase making its first significant entry
// real positive. Keeps basis extraction reproducible across runs.
void normalize_phases(ComplexMatrix& b) {
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index i = 0; i < b.rows(); ++i) {
      double m = std::abs(b(i, j));
      if (m > 1e-9) {
        b.col(j) *= std::conj(b(i, j)) / m;
        break;
      }
    }
  }
}

ComplexMatrix hermitize(const ComplexMatrix& a) { return (a + a.adjoint()) / 2.0; }

}  // namespace

ComplexMatrix hermitian_sqrt(const ComplexMatrix& a, const Tolerance& tol) {
  require_square(a, "hermitian_sqrt");
  if (a.rows() == 0) return a;
  if (spectral_norm(a - a.adjoint()) > tol.atol)
    raise(errc::not_hermitian, "hermitian_sqrt input is not Hermitian at tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(a));
  Eigen::VectorXd lam = es.eigenvalues();
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -tol.atol)
      raise(errc::negative_eigenvalue, "eigenvalue " + std::to_string(lam(i)) + " below -atol");
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return hermitize(es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint());
}

ComplexMatrix basis_of_range(const ComplexMatrix& a, const Tolerance& tol) {
  if (a.rows() == 0 || a.cols() == 0) return ComplexMatrix(a.rows(), 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol.atol) ++rank;
  ComplexMatrix b = svd.matrixU().leftCols(rank);
  normalize_phases(b);
  return b;
}

ComplexMatrix range_projection(const ComplexMatrix& a, const Tolerance& tol) {
  ComplexMatrix b = basis_of_range(a, tol);
  ComplexMatrix p = b * b.adjoint();
  if (p.rows() == 0) return ComplexMatrix::Zero(a.rows(), a.rows());
  return hermitize(p);
}

bool is_projection(const ComplexMatrix& p, const Tolerance& tol) {
  require_square(p, "is_projection");
  return spectral_norm(p - p.adjoint()) <= tol.atol && spectral_norm(p * p - p) <= tol.atol;
}

bool is_isometry(const ComplexMatrix& a, const Tolerance& tol) {
  ComplexMatrix g = a.adjoint() * a;
  return spectral_norm(g - ComplexMatrix::Identity(g.rows(), g.cols())) <= tol.atol;
}

bool is_unitary(const ComplexMatrix& a, const Tolerance& tol) {
  return a.rows() == a.cols() && is_isometry(a, tol) && is_isometry(a.adjoint(), tol);
}

bool is_partial_isometry(const ComplexMatrix& a, const Tolerance& tol) {
  return spectral_norm(a * a.adjoint() * a - a) <= tol.atol;
}

DefectData defect(const ComplexMatrix& t, const Tolerance& tol) {
  require_square(t, "defect");
  if (spectral_norm(t) > 1.0 + tol.atol)
    raise(errc::not_contraction, "largest singular value exceeds 1 + atol");

  const Index n = t.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  // Gram residuals are PSD only up to rounding; clamp their spectra to [0, 1]
  // and drop eigenvalues at or below the tolerance before taking the root.
  // Rounding noise of size eps would otherwise be amplified to sqrt(eps).
  // Dropping is consistent on both sides: T*T and TT* share their nonzero
  // spectrum, so T still intertwines the thresholded roots.
  auto sqrt_clamped = [&](const ComplexMatrix& g, ComplexMatrix& root, ComplexMatrix& basis) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(g));
    Eigen::VectorXd lam = es.eigenvalues();
    Eigen::VectorXd s(lam.size());
    Index rank = 0;
    for (Index i = 0; i < lam.size(); ++i) {
      lam(i) = std::clamp(lam(i), 0.0, 1.0);
      if (lam(i) > tol.atol) {
        s(i) = std::sqrt(lam(i));
        ++rank;
      } else {
        s(i) = 0.0;
      }
    }
    root = hermitize(es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint());

    // Eigenvalues ascending; collect range directions in descending order.
    basis.resize(n, rank);
    for (Index i = 0; i < rank; ++i) basis.col(i) = es.eigenvectors().col(lam.size() - 1 - i);
    normalize_phases(basis);
  };

  DefectData d;
  sqrt_clamped(id - t.adjoint() * t, d.d_t, d.basis_dt);
  sqrt_clamped(id - t * t.adjoint(), d.d_tstar, d.basis_dtstar);
  return d;
}

}  // namespace ppiso
