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

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace plift {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultTol = 1e-10;

//=========================================================================
// Errors
//=========================================================================

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised when the Jacobi sweep budget runs out.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

/// A matrix required to be positive (semi)definite is not. Carries a unit
/// vector with negative (or too small) Rayleigh quotient.
class NotPositiveError : public Error {
 public:
  NotPositiveError(const std::string& what, double min_eigenvalue, CVector witness)
      : Error(what), min_eigenvalue_(min_eigenvalue), witness_(std::move(witness)) {}
  double min_eigenvalue() const { return min_eigenvalue_; }
  const CVector& witness() const { return witness_; }

 private:
  double min_eigenvalue_;
  CVector witness_;
};

//=========================================================================
// Hermitian matrices
//=========================================================================

/// Square complex matrix that is exactly Hermitian. The constructor rejects
/// inputs whose skew-Hermitian part exceeds `tol * (1 + |M|_F)` and stores
/// the Hermitian part of the rest.
class HermMatrix {
 public:
  HermMatrix() = default;
  explicit HermMatrix(const CMatrix& m, double tol = 1e-8);

  /// Stores (M + M^*) / 2 without checking how far M was from Hermitian.
  static HermMatrix symmetrized(const CMatrix& m);
  static HermMatrix identity(Index n);
  static HermMatrix zero(Index n);

  Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  HermMatrix operator+(const HermMatrix& o) const;
  HermMatrix operator-(const HermMatrix& o) const;
  HermMatrix operator*(double s) const;
  HermMatrix& operator+=(const HermMatrix& o);
  HermMatrix& operator-=(const HermMatrix& o);

  /// X^* M X, again Hermitian.
  HermMatrix congruence(const CMatrix& x) const;

 private:
  CMatrix m_;
};

inline HermMatrix operator*(double s, const HermMatrix& m) { return m * s; }

//=========================================================================
// Spectral routines
//=========================================================================

struct EigenDecomposition {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors; // unitary, column i pairs with eigenvalues(i)
  int sweeps = 0;
};

/// Cyclic complex Jacobi. Throws NonConvergenceError after `max_sweeps`.
EigenDecomposition eig_hermitian(const HermMatrix& m, int max_sweeps = 100);

enum class PsdKind { PositiveDefinite, PositiveSemidefinite, Indefinite };

std::string to_string(PsdKind kind);

struct PsdVerdict {
  PsdKind kind = PsdKind::Indefinite;
  double min_eigenvalue = 0.0;
  std::optional<CVector> witness;
};

/// Indefinite iff the smallest eigenvalue is below -tol, PositiveDefinite iff
/// it is above tol.
PsdVerdict psd_check(const HermMatrix& m, double tol = kDefaultTol);

/// Y with Y^* Y = M. Eigenvalues at or below tol * max(1, lambda_max) are
/// dropped, so Y has one row per retained eigenvalue.
CMatrix gram_factor(const HermMatrix& m, double tol = kDefaultTol);

/// M^{-1/2} for positive definite M.
HermMatrix inv_sqrt(const HermMatrix& m, double tol = kDefaultTol);

/// Positive square root of a PSD matrix (negative rounding clipped to zero).
HermMatrix psd_sqrt(const HermMatrix& m, double tol = kDefaultTol);

/// Eigenvalue clipping: nearest PSD matrix in Frobenius norm.
HermMatrix project_psd(const HermMatrix& m);

/// Adjoint of A for the pairing <x, y>_G = y^* G x, i.e. G^{-1} A^* G.
CMatrix weighted_adjoint(const CMatrix& a, const HermMatrix& g, double tol = kDefaultTol);

/// Throws Error if any entry is NaN or infinite.
void require_finite(const CMatrix& m, const char* what);

}  // namespace plift
