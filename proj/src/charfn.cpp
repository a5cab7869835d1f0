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

#include "ppiso/charfn.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "ppiso/core.hpp"
#include "ppiso/powerpi.hpp"

namespace ppiso {

ComplexMatrix char_fn_eval(const ComplexMatrix& t, Complex z, const Tolerance& tol) {
  if (std::abs(z) >= 1.0)
    raise(errc::eval_domain, "characteristic function is evaluated on |z| < 1");
  DefectData d = defect(t, tol);
  const Index n = t.rows();
  ComplexMatrix resolvent = (ComplexMatrix::Identity(n, n) - z * t.adjoint())
                                .partialPivLu()
                                .solve(ComplexMatrix::Identity(n, n));
  ComplexMatrix full = -t + z * d.d_tstar * resolvent * d.d_t;
  return d.basis_dtstar.adjoint() * full * d.basis_dt;
}

LaurentSymbol char_fn_coeffs(const ComplexMatrix& t, int n_max, const Tolerance& tol) {
  if (n_max < 1) throw std::invalid_argument("char_fn_coeffs: n_max must be positive");
  DefectData d = defect(t, tol);
  LaurentSymbol out(d.basis_dt.cols(), d.basis_dtstar.cols());
  out.set_coeff(0, ComplexMatrix(d.basis_dtstar.adjoint() * (-t) * d.basis_dt));
  ComplexMatrix power = ComplexMatrix::Identity(t.rows(), t.rows());  // T*^{m-1}
  for (int m = 1; m <= n_max; ++m) {
    out.set_coeff(m, ComplexMatrix(d.basis_dtstar.adjoint() * d.d_tstar * power * d.d_t * d.basis_dt));
    power = power * t.adjoint();
  }
  return out;
}

LaurentSymbol ppi_char_fn(const ComplexMatrix& t, const Tolerance& tol) {
  HWDecomposition hw = halmos_wallen_decompose(t, tol);
  DefectData d = defect(t, tol);
  LaurentSymbol out(d.basis_dt.cols(), d.basis_dtstar.cols());
  for (const auto& [k, basis] : hw.truncated_parts) {
    ComplexMatrix proj = basis * basis.adjoint();
    ComplexMatrix power = ComplexMatrix::Identity(t.rows(), t.rows());
    for (int m = 1; m < k; ++m) power = power * t.adjoint();
    out.set_coeff(k, ComplexMatrix(d.basis_dtstar.adjoint() * proj * power * d.d_t * d.basis_dt));
  }
  return out;
}

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& ts) {
  Index n = 0;
  for (const auto& t : ts) {
    if (t.rows() != t.cols()) raise(errc::not_square, "direct_sum needs square blocks");
    n += t.rows();
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  Index at = 0;
  for (const auto& t : ts) {
    out.block(at, at, t.rows(), t.rows()) = t;
    at += t.rows();
  }
  return out;
}

namespace {

ComplexMatrix polar_unitary(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

ComplexMatrix random_unitary(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  // Fix the phase freedom of QR so the draw is deterministic in the seed.
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    Complex d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

double pair_residual(const std::vector<int>& support, const LaurentSymbol& theta,
                     const LaurentSymbol& phi, const ComplexMatrix& tau,
                     const ComplexMatrix& tau_star) {
  double worst = 0.0;
  for (int m : support)
    worst = std::max(worst, spectral_norm(tau_star * theta.coeff(m) - phi.coeff(m) * tau));
  return worst;
}

}  // namespace

CoincidenceResult coincide(const LaurentSymbol& theta, const LaurentSymbol& phi,
                           const Tolerance& tol, const CoincideOptions& options) {
  CoincidenceResult best;
  if (theta.min_degree() < 0 || phi.min_degree() < 0)
    raise(errc::not_analytic, "coincide compares analytic symbols");
  if (theta.dim_domain() != phi.dim_domain() || theta.dim_codomain() != phi.dim_codomain()) {
    best.note = "DimensionMismatch: coefficient spaces have different dimensions";
    return best;
  }

  const Index d = theta.dim_domain();
  const Index e = theta.dim_codomain();
  std::set<int> degrees;
  for (const auto& [m, c] : theta.coeffs()) degrees.insert(m);
  for (const auto& [m, c] : phi.coeffs()) degrees.insert(m);
  const std::vector<int> support(degrees.begin(), degrees.end());

  if (support.empty() || d == 0 || e == 0) {
    best.verdict = true;
    best.tau = ComplexMatrix::Identity(d, d);
    best.tau_star = ComplexMatrix::Identity(e, e);
    best.residual = 0.0;
    return best;
  }

  auto consider = [&](const ComplexMatrix& tau, const ComplexMatrix& tau_star) {
    double res = pair_residual(support, theta, phi, tau, tau_star);
    if (res < best.residual) {
      best.residual = res;
      best.tau = tau;
      best.tau_star = tau_star;
    }
  };

  // The identity pair settles reflexive queries without touching the
  // SVD-based alignment, whose null-space columns are arbitrary.
  consider(ComplexMatrix::Identity(d, d), ComplexMatrix::Identity(e, e));
  if (options.warm_start) consider(options.warm_start->first, options.warm_start->second);

  std::mt19937_64 rng(options.seed);
  for (int restart = 0; restart < options.restarts && best.residual > tol.atol; ++restart) {
    ComplexMatrix tau =
        (restart == 0) ? ComplexMatrix::Identity(d, d) : random_unitary(rng, d);
    if (restart == 0 && options.warm_start) tau = options.warm_start->first;
    ComplexMatrix tau_star = ComplexMatrix::Identity(e, e);
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < options.iterations; ++it) {
      ComplexMatrix m_star = ComplexMatrix::Zero(e, e);
      for (int m : support) m_star += phi.coeff(m) * tau * theta.coeff(m).adjoint();
      tau_star = polar_unitary(m_star);
      ComplexMatrix m_tau = ComplexMatrix::Zero(d, d);
      for (int m : support) m_tau += phi.coeff(m).adjoint() * tau_star * theta.coeff(m);
      tau = polar_unitary(m_tau);
      double res = pair_residual(support, theta, phi, tau, tau_star);
      consider(tau, tau_star);
      if (prev - res < tol.atol / 10.0) break;
      prev = res;
    }
  }

  best.verdict = best.residual <= tol.atol && is_unitary(best.tau, tol) &&
                 is_unitary(best.tau_star, tol);
  return best;
}

}  // namespace ppiso
