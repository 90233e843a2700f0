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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plift/matrix_core.hpp"
#include "plift/pencil.hpp"

namespace plift {

//=========================================================================
// Models
//=========================================================================

struct CommutingUnitaryPair {
  CMatrix u1;
  CMatrix u2;

  Index dim() const { return u1.rows(); }

  /// Throws unless both are unitary and commute, within tol.
  static CommutingUnitaryPair checked(CMatrix u1, CMatrix u2, double tol = 1e-10);
};

struct JointPoint {
  Complex first;
  Complex second;
  int multiplicity = 1;
};

struct JointSpectrum {
  std::vector<JointPoint> points;

  int total_multiplicity() const;
  /// One entry per eigenvalue, repeated by multiplicity times `factor`.
  std::vector<std::pair<Complex, Complex>> expanded(int factor = 1) const;
};

/// True if the expanded multisets match one-to-one within tol (max of the
/// two coordinate distances).
bool same_multiset(const JointSpectrum& a, const JointSpectrum& b, double tol, int b_factor = 1);

/// U_i = V D_i V^* with V Haar-random and D_i random unit-modulus diagonals.
/// `phases`, if given, receives the diagonal pairs.
CommutingUnitaryPair random_commuting_unitaries(Index k, std::uint64_t seed,
                                                std::vector<JointPoint>* phases = nullptr);

/// A_i = V D_i V^* with real diagonals in [-pi/2, pi/2).
std::pair<CMatrix, CMatrix> random_commuting_hermitian(Index k, std::uint64_t seed);

/// J1 = [[U1, c U1, 0], [0, U1, 0], [0, 0, U1]] and
/// J2 = [[U2, 0, d U2], [0, U2, 0], [0, 0, U2]] as 3 x 3 block matrices.
struct JordanPair {
  CommutingUnitaryPair base;
  HatParams params;
  CMatrix j1;
  CMatrix j2;

  Index k() const { return base.dim(); }
};

JordanPair build_jordan_pair(const CommutingUnitaryPair& base, const HatParams& params);

/// [[1, nc, md], [nc, n^2c^2 + 1, ncmd], [md, ncmd, m^2d^2 + 1]] (x) I_k, block
/// (a, b) of the result being entry (a, b) times I_k.
CMatrix jordan_closed_form(double n, double m, const HatParams& params, Index k);

/// Pencil whose value at (alpha, beta) is jordan_closed_form(alpha, beta).
QuadraticPencil jordan_pencil(const HatParams& params, Index k);

/// Kronecker product with the 3 x 3 outer structure: block (a, b) = s(a, b) * inner.
CMatrix outer_kron(const CMatrix& s, const CMatrix& inner);

//=========================================================================
// Hereditary pencils
//=========================================================================

/// (T1^n T2^m)^* G (T1^n T2^m); negative exponents invert the factor.
/// Throws if the commutator exceeds tol (1 + |T1| |T2|).
HermMatrix hereditary_value(const CMatrix& t1, const CMatrix& t2, const HermMatrix& g, int n,
                            int m, double tol = 1e-9);

struct PencilFit {
  /// Coefficients interpolated from (0,0), (1,0), (0,1), (1,1), (2,0), (0,2).
  QuadraticPencil candidate;
  /// Worst Frobenius misfit at (2,1), (1,2), (2,2), (3,0), (0,3).
  double validation_residual = 0.0;
};

/// Interpolates and validates. With `embed` (N x M), each hereditary value is
/// compressed to embed^* Q(n, m) embed.
PencilFit fit_pencil_detailed(const CMatrix& t1, const CMatrix& t2, const HermMatrix& g,
                              const std::optional<CMatrix>& embed = std::nullopt);

/// Interpolated pencil if every validation residual is within tol.
std::optional<QuadraticPencil> fit_pencil(const CMatrix& t1, const CMatrix& t2,
                                          const HermMatrix& g, double tol,
                                          const std::optional<CMatrix>& embed = std::nullopt);

//=========================================================================
// Class membership
//=========================================================================

struct RelationResidual {
  std::string relation;
  double residual = 0.0;
};

struct ClassReport {
  std::vector<RelationResidual> relations;
  double tol = 0.0;

  bool passed() const;
  double worst() const;
};

/// Block pattern, unitarity, commutation and relations i-vi for the
/// normalized nilpotents N1 (J1 - W1) W1^* / c and (J2 - W2) W2^* / d, where
/// W_i repeats the (0, 0) block of J_i down the diagonal.
ClassReport class_membership(const CMatrix& j1, const CMatrix& j2, const HatParams& params,
                             double tol);

//=========================================================================
// Spectra and functional calculus
//=========================================================================

/// Joint eigenvalues from one Schur form of T1 + theta T2, reordered so equal
/// eigenvalues are contiguous. Eigenvalues within `cluster_tol` (relative to
/// the norm) are treated as one; a theta that merges distinct joint
/// eigenvalues or fails to block-triangularize both matrices is redrawn, up
/// to 8 times.
JointSpectrum joint_eigenvalues(const CMatrix& t1, const CMatrix& t2, double tol = 1e-9,
                                std::uint64_t seed = 0, double cluster_tol = 1e-6);

using ScalarFunction = std::function<Complex(Complex)>;

/// [[g(U1), c U1 g'(U1), 0], [0, g(U1), 0], [0, 0, g(U1)]] and the J2
/// analogue, with g(U) computed on the eigenbasis of the unitary.
std::pair<CMatrix, CMatrix> apply_holomorphic(const JordanPair& j, const ScalarFunction& g,
                                              const ScalarFunction& g_prime);

/// log(z e^{-i phi}) + i phi: the branch cut is the ray at angle phi + pi.
Complex log_with_cut(Complex z, double phi);

/// Rotation phi putting the cut in the middle of the widest gap between the
/// arguments of `values`.
double cut_rotation(const std::vector<Complex>& values);

/// Eigenvalues of a normal matrix (Schur diagonal).
std::vector<Complex> normal_eigenvalues(const CMatrix& u);

/// exp(L) for L = I3 (x) A + N with A normal, N strictly block upper
/// triangular, N^2 = 0 and AN = NA, via exp(I3 (x) A)(I + N). Throws if L
/// does not have that structure within 1e-8.
CMatrix exp_block_jordan(const CMatrix& l);

/// exp(S + N) = exp(S) (I + N) with S = I3 (x) A, A Hermitian, N^2 = 0 and
/// SN = NS: returns exp(i (I3 (x) A + N)).
CMatrix exp_i_sjordan(const CMatrix& a, const CMatrix& nilpotent);

struct SJordanReport {
  ClassReport membership;
  /// |exp(i J_k) - build_jordan_pair(exp(i A_k))_k|, k = 1, 2.
  double pattern_residual = 0.0;
  /// |S N - N S| and |N^2| over both blocks.
  double expansion_residual = 0.0;
  CMatrix exp1;
  CMatrix exp2;

  bool passed() const { return membership.passed() && pattern_residual <= membership.tol; }
};

/// Builds [[A1, -ic, 0], [0, A1, 0], [0, 0, A1]] and the A2 analogue,
/// exponentiates exp(i J) and checks class membership with base exp(i A_k).
SJordanReport sjordan_exp_check(const CMatrix& a1, const CMatrix& a2, const HatParams& params,
                                double tol);

}  // namespace plift
