// Copyright 2026 The pencil-lift Authors
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

#include "plift/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace plift {

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(std::string(what) + ": matrix has non-finite entries");
  }
}

//=========================================================================
// HermMatrix
//=========================================================================

HermMatrix::HermMatrix(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    std::ostringstream ss;
    ss << "HermMatrix: expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(ss.str());
  }
  require_finite(m, "HermMatrix");
  const double skew = (m - m.adjoint()).norm() / 2.0;
  if (skew > tol * (1.0 + m.norm())) {
    std::ostringstream ss;
    ss << "HermMatrix: skew-Hermitian part has norm " << skew;
    throw Error(ss.str());
  }
  m_ = (m + m.adjoint()) / 2.0;
}

HermMatrix HermMatrix::symmetrized(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("HermMatrix::symmetrized: not square");
  require_finite(m, "HermMatrix");
  HermMatrix h;
  h.m_ = (m + m.adjoint()) / 2.0;
  return h;
}

HermMatrix HermMatrix::identity(Index n) {
  HermMatrix h;
  h.m_ = CMatrix::Identity(n, n);
  return h;
}

HermMatrix HermMatrix::zero(Index n) {
  HermMatrix h;
  h.m_ = CMatrix::Zero(n, n);
  return h;
}

HermMatrix HermMatrix::operator+(const HermMatrix& o) const {
  HermMatrix r(*this);
  return r += o;
}

HermMatrix HermMatrix::operator-(const HermMatrix& o) const {
  HermMatrix r(*this);
  return r -= o;
}

HermMatrix HermMatrix::operator*(double s) const {
  HermMatrix r(*this);
  r.m_ *= s;
  return r;
}

HermMatrix& HermMatrix::operator+=(const HermMatrix& o) {
  if (o.dim() != dim()) throw DimensionError("HermMatrix: dimension mismatch in +");
  m_ += o.m_;
  return *this;
}

HermMatrix& HermMatrix::operator-=(const HermMatrix& o) {
  if (o.dim() != dim()) throw DimensionError("HermMatrix: dimension mismatch in -");
  m_ -= o.m_;
  return *this;
}

HermMatrix HermMatrix::congruence(const CMatrix& x) const {
  if (x.rows() != dim()) throw DimensionError("HermMatrix::congruence: dimension mismatch");
  return symmetrized(x.adjoint() * m_ * x);
}

//=========================================================================
// Jacobi eigensolver
//=========================================================================

namespace {

double off_diagonal_sum(const CMatrix& a) {
  double s = 0.0;
  for (Index q = 1; q < a.cols(); ++q)
    for (Index p = 0; p < q; ++p) s += std::abs(a(p, q));
  return s;
}

// Annihilates a(p,q) with the unitary D * R, where D rephases column q so the
// pivot becomes real and R is a real plane rotation.
void rotate(CMatrix& a, CMatrix& v, Index p, Index q) {
  const Index n = a.rows();
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  const Complex phase = std::conj(apq) / mag;  // e^{-i arg apq}

  for (Index k = 0; k < n; ++k) a(k, q) *= phase;
  for (Index k = 0; k < n; ++k) a(q, k) *= std::conj(phase);
  for (Index k = 0; k < n; ++k) v(k, q) *= phase;

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = 0.5 * (aqq - app) / mag;
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  for (Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
}

}  // namespace

EigenDecomposition eig_hermitian(const HermMatrix& m, int max_sweeps) {
  const Index n = m.dim();
  CMatrix a = m.matrix();
  CMatrix v = CMatrix::Identity(n, n);
  for (Index i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  int sweep = 0;
  for (;; ++sweep) {
    const double off = off_diagonal_sum(a);
    if (off == 0.0) break;
    if (sweep >= max_sweeps) {
      std::ostringstream ss;
      ss << "eig_hermitian: no convergence after " << sweep << " sweeps (off-diagonal sum "
         << off << ")";
      throw NonConvergenceError(ss.str(), sweep);
    }
    const double threshold = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        const double g = 100.0 * mag;
        const double app = std::abs(a(p, p).real());
        const double aqq = std::abs(a(q, q).real());
        // Negligible pivots are zeroed once the early sweeps are done.
        if (sweep > 3 && app + g == app && aqq + g == aqq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        if (mag > threshold && mag > 0.0) rotate(a, v, p, q);
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

//=========================================================================
// PSD utilities
//=========================================================================

std::string to_string(PsdKind kind) {
  switch (kind) {
    case PsdKind::PositiveDefinite: return "PositiveDefinite";
    case PsdKind::PositiveSemidefinite: return "PositiveSemidefinite";
    case PsdKind::Indefinite: return "Indefinite";
  }
  return "?";
}

PsdVerdict psd_check(const HermMatrix& m, double tol) {
  if (tol < 0.0) throw Error("psd_check: tol must be non-negative");
  PsdVerdict out;
  if (m.dim() == 0) {
    out.kind = PsdKind::PositiveDefinite;
    return out;
  }
  const auto eig = eig_hermitian(m);
  out.min_eigenvalue = eig.eigenvalues(0);
  out.witness = eig.eigenvectors.col(0);
  if (out.min_eigenvalue < -tol) {
    out.kind = PsdKind::Indefinite;
  } else if (out.min_eigenvalue > tol) {
    out.kind = PsdKind::PositiveDefinite;
  } else {
    out.kind = PsdKind::PositiveSemidefinite;
  }
  return out;
}

CMatrix gram_factor(const HermMatrix& m, double tol) {
  const auto eig = eig_hermitian(m);
  const Index n = m.dim();
  if (n == 0) return CMatrix(0, 0);
  if (eig.eigenvalues(0) < -tol) {
    throw NotPositiveError("gram_factor: matrix is indefinite", eig.eigenvalues(0),
                           eig.eigenvectors.col(0));
  }
  const double cutoff = tol * std::max(1.0, eig.eigenvalues(n - 1));
  std::vector<Index> kept;
  for (Index k = 0; k < n; ++k)
    if (eig.eigenvalues(k) > cutoff) kept.push_back(k);

  CMatrix y(static_cast<Index>(kept.size()), n);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const Index k = kept[r];
    y.row(static_cast<Index>(r)) =
        std::sqrt(eig.eigenvalues(k)) * eig.eigenvectors.col(k).adjoint();
  }
  return y;
}

HermMatrix inv_sqrt(const HermMatrix& m, double tol) {
  const auto eig = eig_hermitian(m);
  if (m.dim() > 0 && eig.eigenvalues(0) <= tol) {
    throw NotPositiveError("inv_sqrt: matrix is not positive definite", eig.eigenvalues(0),
                           eig.eigenvectors.col(0));
  }
  const RVector scale = eig.eigenvalues.cwiseSqrt().cwiseInverse();
  return HermMatrix::symmetrized(eig.eigenvectors * scale.asDiagonal() *
                                 eig.eigenvectors.adjoint());
}

HermMatrix psd_sqrt(const HermMatrix& m, double tol) {
  const auto eig = eig_hermitian(m);
  if (m.dim() > 0 && eig.eigenvalues(0) < -tol) {
    throw NotPositiveError("psd_sqrt: matrix is indefinite", eig.eigenvalues(0),
                           eig.eigenvectors.col(0));
  }
  const RVector scale = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return HermMatrix::symmetrized(eig.eigenvectors * scale.asDiagonal() *
                                 eig.eigenvectors.adjoint());
}

HermMatrix project_psd(const HermMatrix& m) {
  const auto eig = eig_hermitian(m);
  const RVector clipped = eig.eigenvalues.cwiseMax(0.0);
  return HermMatrix::symmetrized(eig.eigenvectors * clipped.asDiagonal() *
                                 eig.eigenvectors.adjoint());
}

CMatrix weighted_adjoint(const CMatrix& a, const HermMatrix& g, double tol) {
  if (a.rows() != a.cols()) throw DimensionError("weighted_adjoint: A must be square");
  if (g.dim() != a.rows()) throw DimensionError("weighted_adjoint: Gram dimension mismatch");
  const auto verdict = psd_check(g, tol);
  if (verdict.kind != PsdKind::PositiveDefinite) {
    throw NotPositiveError("weighted_adjoint: Gram matrix is not positive definite",
                           verdict.min_eigenvalue, verdict.witness.value_or(CVector()));
  }
  const CMatrix rhs = a.adjoint() * g.matrix();
  return g.matrix().llt().solve(rhs);
}

}  // namespace plift
