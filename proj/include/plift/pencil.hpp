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

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plift/matrix_core.hpp"

namespace plift {

/// Exponent pair of the monomial alpha^i beta^j.
struct Monomial {
  int i = 0;
  int j = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Storage order of pencil coefficients, and of everything keyed like them.
inline constexpr std::array<Monomial, 6> kMonomials = {
    Monomial{0, 0}, Monomial{1, 0}, Monomial{0, 1}, Monomial{1, 1}, Monomial{2, 0}, Monomial{0, 2}};

/// Position of (i, j) in kMonomials; throws for i + j > 2.
std::size_t monomial_slot(int i, int j);

/// "00", "10", ... as used in the JSON schemas.
std::string monomial_key(const Monomial& m);

/// Scaling parameters of the hat modification. The first pairs with alpha
/// (and B20), the second with beta (and B02).
struct HatParams {
  double c = 1.0;
  double d = 1.0;

  /// Throws unless both are finite and positive.
  static HatParams checked(double c, double d);
};

/// Operators V0, V1, V2 from C^n into a common target space.
struct FactorTriple {
  CMatrix v0;
  CMatrix v1;
  CMatrix v2;

  Index source_dim() const { return v0.cols(); }
  Index target_dim() const { return v0.rows(); }
  /// Throws DimensionError if the three shapes differ.
  void validate() const;
};

/// Q(alpha, beta) = sum over i + j <= 2 of alpha^i beta^j B_ij with Hermitian
/// coefficients of a common dimension.
class QuadraticPencil {
 public:
  QuadraticPencil() = default;
  explicit QuadraticPencil(std::array<HermMatrix, 6> coeffs);

  /// Expansion of (V0 + alpha V1 + beta V2)^* (V0 + alpha V1 + beta V2).
  static QuadraticPencil from_factors(const FactorTriple& f);

  Index dim() const { return coeffs_[0].dim(); }
  /// B00 equals the identity to 1e-12 in Frobenius norm.
  bool monic() const { return monic_; }

  const HermMatrix& coeff(int i, int j) const { return coeffs_[monomial_slot(i, j)]; }
  const std::array<HermMatrix, 6>& coeffs() const { return coeffs_; }
  QuadraticPencil with_coeff(int i, int j, HermMatrix value) const;

 private:
  std::array<HermMatrix, 6> coeffs_;
  bool monic_ = false;
};

HermMatrix evaluate(const QuadraticPencil& p, double alpha, double beta);

/// (1/c^2) B20 + (1/d^2) B02.
HermMatrix hat_correction(const QuadraticPencil& p, const HatParams& params);

/// Same pencil with B00 replaced by B00 - (1/c^2) B20 - (1/d^2) B02.
QuadraticPencil hat(const QuadraticPencil& p, const HatParams& params);

/// Residuals of the six coefficient identities of a factorization, in
/// kMonomials order (Frobenius norms).
std::array<double, 6> factorization_residuals(const QuadraticPencil& p, const FactorTriple& f);

bool verify_factorization(const QuadraticPencil& p, const FactorTriple& f, double tol);

/// The pencil taking the given values at the points (i, j) of kMonomials:
/// B00 = Q(0,0), B20 = (Q(2,0) - 2Q(1,0) + Q(0,0)) / 2, B10 = Q(1,0) - Q(0,0) - B20,
/// likewise in beta, and B11 = Q(1,1) - Q(1,0) - Q(0,1) + Q(0,0).
QuadraticPencil interpolate_pencil(const std::array<CMatrix, 6>& values);

//=========================================================================
// Real bivariate quadratics
//=========================================================================

/// q(alpha, beta) = a + 2 b1 alpha + 2 b2 beta + p alpha^2 + 2 r alpha beta + s beta^2.
struct ScalarQuadratic {
  double a = 0, b1 = 0, b2 = 0, p = 0, r = 0, s = 0;

  double operator()(double alpha, double beta) const {
    return a + 2 * b1 * alpha + 2 * b2 * beta + p * alpha * alpha + 2 * r * alpha * beta +
           s * beta * beta;
  }
};

/// The form <Q(alpha, beta) x, x> as a real quadratic.
ScalarQuadratic directional_quadratic(const QuadraticPencil& pencil, const CVector& x);

/// Exact global nonnegativity: [[p, r], [r, s]] PSD, (b1, b2) in its range, and
/// a - b^T A^+ b >= -tol.
bool scalar_quadratic_nonneg(double a, double b1, double b2, double p, double r, double s,
                             double tol);

/// A point where q < -tol, if the nonnegativity test fails.
std::optional<std::pair<double, double>> scalar_quadratic_witness(const ScalarQuadratic& q,
                                                                  double tol);

//=========================================================================
// Normalization and parameter search
//=========================================================================

/// Adds epsilon I to B00 and conjugates every coefficient by
/// (B00 + epsilon I)^{-1/2}. The result is monic.
QuadraticPencil monicize(const QuadraticPencil& p, double epsilon, double tol = kDefaultTol);

/// Evenly spaced points on [-radius, radius]; a single step gives {0}.
std::vector<double> grid_points(double radius, int steps);

/// Smallest eigenvalue of Q over the square grid.
double grid_min_eigenvalue(const QuadraticPencil& p, double radius, int steps);

struct CdSuggestion {
  HatParams params;
  double delta = 0.0;
};

/// Smallest c = d, from a doubling-then-bisection schedule starting at
/// kCdScheduleMin, with delta I - (1/c^2) B02 - (1/d^2) B20 PSD.
std::optional<HatParams> suggest_cd_for_delta(const QuadraticPencil& p, double delta, double tol);

inline constexpr double kCdScheduleMin = 1.0 / 16.0;

/// Estimates delta as the grid minimum of the smallest eigenvalue and then
/// searches c = d. Requires a monic pencil. Empty if delta <= tol.
std::optional<CdSuggestion> suggest_cd(const QuadraticPencil& p, double grid_radius,
                                       int grid_steps, double tol = kDefaultTol);

/// Rescales V0, V1, V2 by M^{-1/2}, M = V0^*V0 + V1^*V1/c^2 + V2^*V2/d^2, and
/// returns the monic pencil whose hat at `params` is exactly the expansion of
/// the rescaled triple.
std::pair<QuadraticPencil, FactorTriple> monic_from_hat_factors(const FactorTriple& f,
                                                                const HatParams& params,
                                                                double tol = kDefaultTol);

}  // namespace plift
