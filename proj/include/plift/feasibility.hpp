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

#include <optional>
#include <string>

#include "plift/matrix_core.hpp"
#include "plift/pencil.hpp"

namespace plift {

enum class FeasibilityKind { Feasible, Infeasible, Undetermined };

std::string to_string(FeasibilityKind kind);

struct FeasibilityOptions {
  int max_iter = 10000;
  /// Feasible once the PSD iterate is within this Frobenius distance of the
  /// affine constraint set.
  double tol = 1e-10;
  /// Infeasible requires the gap to stay above this value.
  double infeas_threshold = 1e-6;
  /// Relative change of the gap over `window` iterations below which the
  /// sequence counts as stalled.
  double stall_tol = 1e-6;
  int window = 50;
  /// Refine low-gap iterates by Levenberg-Marquardt on a Gram factor (pencils
  /// of dimension at most 8).
  bool polish = true;
};

struct FeasibilityOutcome {
  FeasibilityKind kind = FeasibilityKind::Undetermined;
  /// PSD iterate, present for Feasible. Its blocks meet the constraints to
  /// within `gap`.
  std::optional<HermMatrix> gram;
  double gap = 0.0;
  int iterations = 0;
  /// Normalized slack of the separating functional, present for Infeasible.
  std::optional<double> certificate_margin;
};

/// The affine part of a factorization Gram matrix: 3n x 3n with diagonal
/// blocks B00, B20, B02 and off-diagonal blocks half of B10, B01, B11.
HermMatrix affine_center(const QuadraticPencil& p);

/// Orthogonal projection onto the matrices whose blocks satisfy the
/// factorization constraints of `p` (skew parts of off-diagonal blocks kept).
HermMatrix project_affine(const HermMatrix& g, const QuadraticPencil& p);

/// Searches a PSD G with G00 = B00, G11 = B20, G22 = B02 and Hermitian parts
/// of G01, G02, G12 equal to B10/2, B01/2, B11/2 by Dykstra alternating
/// projections.
///
/// Infeasible is reported only when the gap has stalled above
/// `infeas_threshold` and the normal-space residual Z = Y - P_A(Y) separates
/// the constraint set from the PSD cone: <Z, G> is constant on the affine
/// set and strictly below min(lambda_min(Z), 0) tr(G), which no PSD G can
/// achieve.
FeasibilityOutcome factor_feasibility(const QuadraticPencil& p,
                                      const FeasibilityOptions& options = {});

FeasibilityOutcome factor_feasibility(const QuadraticPencil& p, int max_iter, double tol,
                                      double infeas_threshold);

/// Splits a Gram factor of G into its three n-column blocks.
FactorTriple gram_to_factors(const HermMatrix& g, double tol = kDefaultTol);

}  // namespace plift
