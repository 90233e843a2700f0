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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plift/feasibility.hpp"
#include "plift/matrix_core.hpp"
#include "plift/pencil.hpp"

namespace plift {

/// Basis of the 3x3 complex symmetric matrices with disjoint supports:
/// B00 = E11, B10 = c(E12 + E21), B01 = d(E13 + E31), B11 = cd(E23 + E32),
/// B20 = c^2 E22, B02 = d^2 E33. Summing alpha^i beta^j B_ij gives the
/// rank-one matrix of (1, alpha c, beta d).
struct SymBasis {
  HatParams params;
  std::array<HermMatrix, 6> elements;  // kMonomials order

  static SymBasis make(const HatParams& params);

  const HermMatrix& element(int i, int j) const { return elements[monomial_slot(i, j)]; }

  /// Coordinates of A in the basis. Throws if A is not symmetric (A = A^T)
  /// within tol, naming the offending entry.
  std::array<Complex, 6> coordinates(const CMatrix& a, double tol = kDefaultTol) const;
};

/// Linear map on Sym3 given by its images on the SymBasis with `params`.
struct LinearMapSym3 {
  Index target_dim = 0;
  HatParams params;
  std::array<HermMatrix, 6> images;  // kMonomials order

  const HermMatrix& image(int i, int j) const { return images[monomial_slot(i, j)]; }
};

/// The same map described on another basis (images rescale by linearity).
LinearMapSym3 rebased(const LinearMapSym3& m, const HatParams& params);

/// A -> (2/3) diag(a11 + a22, a22 + a33, a33 + a11) - A / 3 on all of M3.
CMatrix choi_formula(const CMatrix& a);

/// The map above, stored on the basis with c = d = 1.
LinearMapSym3 choi_map();

/// Images equal to the basis elements themselves (n = 3).
LinearMapSym3 identity_map(const HatParams& params = {});

LinearMapSym3 zero_map(Index target_dim, const HatParams& params = {});

/// A -> sum_i V_i^* A V_i with each V_i of size 3 x n.
LinearMapSym3 map_from_kraus(const std::vector<CMatrix>& kraus, const HatParams& params = {});

/// Decomposes A in `basis` and combines the images of `m` linearly. The
/// result is Hermitian only for real symmetric A.
CMatrix apply(const LinearMapSym3& m, const CMatrix& a, const SymBasis& basis);

/// 3n x 3n block matrix with blocks indexed by matrix units E_ab.
struct ChoiMatrix {
  HermMatrix value;

  Index target_dim() const { return value.dim() / 3; }
  CMatrix block(Index a, Index b) const {
    const Index n = target_dim();
    return value.matrix().block(a * n, b * n, n, n);
  }
};

/// Symmetrized Choi matrix: block (a, b), a != b, is half the image of
/// E_ab + E_ba, so off-diagonal blocks carry no skew-Hermitian part.
ChoiMatrix choi_matrix(const LinearMapSym3& m, const SymBasis& basis);

/// Choi matrix agreeing with the map on Sym3 read off a feasibility Gram
/// matrix of pencil_from_map(m, basis): (D^-1 (x) I) G (D^-1 (x) I) with
/// D = diag(1, c, d).
ChoiMatrix choi_from_gram(const HermMatrix& g, const HatParams& params);

/// Pencil whose (i, j) coefficient is the image of B_ij.
QuadraticPencil pencil_from_map(const LinearMapSym3& m, const SymBasis& basis);

enum class CpKind { CP, NotCP, Unknown };

std::string to_string(CpKind kind);

struct CpVerdict {
  CpKind kind = CpKind::Unknown;
  /// Fast sufficient test on the symmetrized Choi matrix.
  PsdVerdict symmetrized_choi;
  /// Absent when the fast test already settled CP.
  std::optional<FeasibilityOutcome> feasibility;
  /// PSD Choi matrix of the map when CP.
  std::optional<ChoiMatrix> representative;
};

/// CP on Sym3 iff the pencil of the map factors; the symmetrized Choi matrix
/// being PSD is checked first as a shortcut.
CpVerdict is_cp(const LinearMapSym3& m, const SymBasis& basis, double tol = kDefaultTol,
                const FeasibilityOptions& options = {});

struct PositivitySample {
  bool positive = false;
  double worst_min_eigenvalue = 0.0;
  /// Unit-norm PSD input attaining the worst value.
  CMatrix worst_input;
  int trials = 0;
};

/// Real PSD inputs (complex symmetric PSD matrices are real): even trials use
/// v v^T + w w^T, odd trials W W^T, all normalized to unit Frobenius norm.
/// Trial t draws from derive_seed(seed, t).
PositivitySample is_positive_sampled(const LinearMapSym3& m, const SymBasis& basis, int trials,
                                     std::uint64_t seed, double tol = 1e-9);

/// Gram-factors C into V_i (3 x n) with sum_i V_i^* E_ab V_i = block (a, b),
/// verified on the nine matrix units to 1e-8.
std::vector<CMatrix> kraus_from_choi(const ChoiMatrix& c, double tol = kDefaultTol);

}  // namespace plift
