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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plift/matrix_core.hpp"
#include "plift/pencil.hpp"

namespace plift {

/// Lattice point (j, k) with |j|, |k| <= K.
using Site = std::pair<int, int>;

enum class Shift { T, S };

/// A Gram block that is not positive definite.
class BlockNotPositiveError : public NotPositiveError {
 public:
  BlockNotPositiveError(const std::string& what, Site site, double min_eigenvalue, CVector witness)
      : NotPositiveError(what, min_eigenvalue, std::move(witness)), site_(site) {}
  Site site() const { return site_; }

 private:
  Site site_;
};

/// Coefficients h_{j,k} of sum h_{j,k} (x) f_j (x) f_k.
struct LatticeVector {
  std::map<Site, CVector> coefficients;
};

/// Default cap on n (2K + 1)^2 for dense realizations.
inline constexpr Index kDenseCap = 4096;

/// C^n (x) F (x) F truncated to [-K, K]^2 with the block-diagonal Gram matrix
/// whose block at (j, k) is Q(j, k). T and S shift j and k by one.
///
/// Sites are ordered row-major: site (j, k) has index (j + K)(2K + 1) + (k + K)
/// and occupies coordinates [n index, n index + n) of dense vectors.
class ShiftSpace {
 public:
  /// Throws BlockNotPositiveError for the first site (in lattice order) whose
  /// block is not positive definite at tol.
  static ShiftSpace build(const QuadraticPencil& p, int K, double tol = kDefaultTol);

  /// Arbitrary Gram blocks in lattice order; `p` is kept only as metadata.
  static ShiftSpace from_gram_blocks(const QuadraticPencil& p, int K,
                                     std::vector<HermMatrix> blocks, double tol = kDefaultTol);

  const QuadraticPencil& pencil() const { return pencil_; }
  int K() const { return K_; }
  int side() const { return 2 * K_ + 1; }
  Index dim_h() const { return pencil_.dim(); }
  std::size_t site_count() const { return blocks_.size(); }
  Index total_dim() const { return dim_h() * static_cast<Index>(site_count()); }

  bool contains(Site s) const;
  std::size_t site_index(Site s) const;
  Site site_at(std::size_t index) const;
  const HermMatrix& block(Site s) const { return blocks_[site_index(s)]; }

  /// Block-diagonal Gram matrix of the whole truncation.
  HermMatrix gram_dense(Index cap = kDenseCap) const;
  /// Truncated shift: sites pushed past K are dropped.
  CMatrix shift_dense(Shift which, Index cap = kDenseCap) const;
  /// Columns of the identity for the sites with |j|, |k| <= K - margin.
  CMatrix interior_embedding(int margin) const;
  /// Columns of the identity for a single site.
  CMatrix site_embedding(Site s) const;

 private:
  QuadraticPencil pencil_;
  int K_ = 0;
  std::vector<HermMatrix> blocks_;
};

/// Adds kappa (j + K)^3 I to every block: a positive cubic in j.
ShiftSpace perturb_cubic(const ShiftSpace& sp, double kappa);

LatticeVector delta_vector(Site s, const CVector& h);

/// Relabels (j, k) -> (j + power, k) for T or (j, k + power) for S. Throws if
/// a supported site would leave the lattice, naming it.
LatticeVector apply_shift(const ShiftSpace& sp, const LatticeVector& v, Shift which, int power);

/// <x, y> = sum over sites of y^* Q(site) x.
Complex lattice_inner(const ShiftSpace& sp, const LatticeVector& x, const LatticeVector& y);

/// Sites with -K + margin <= j <= K - margin - n and likewise for k with m.
std::vector<Site> interior_sites(const ShiftSpace& sp, int n, int m, int margin);

/// For each interior site, the matrix of h -> <T^n S^m (h at site), T^n S^m (. at site)>,
/// which equals Q(j + n, k + m).
std::map<Site, HermMatrix> hereditary_value_lattice(const ShiftSpace& sp, int n, int m,
                                                    int interior_margin);

struct SiteResidual {
  std::optional<Site> site;  // absent for global checks
  std::string check;
  double residual = 0.0;
};

struct ShiftReport {
  std::vector<SiteResidual> entries;
  double tol = 0.0;

  double worst(const std::string& check_prefix = "") const;
  bool passed() const { return worst() <= tol; }
};

/// (a) Third differences of the Gram table along each axis, per site.
/// (b) With T# = G^{-1} T^* G on the dense truncation, the G-pairing of
///     T#^3 T^3 - 3 T#^2 T^2 + 3 T# T - I on vectors supported on
///     |j|, |k| <= K - 3, reported as |L M L|_F with L = G_int^{-1/2}, an
///     upper bound on the worst unit vector. Same for S.
/// Requires K >= 4.
ShiftReport verify_3isometry(const ShiftSpace& sp, double tol);

/// Transfer of a factorization of the hat of sp.pencil() to the shift pair:
/// the embedding h -> h (x) f0 (x) f0 is Gram-isometric, W0 (site value
/// V0 + j V1 + k V2) reproduces the Gram blocks up to the hat correction, and
/// at sites with |j|, |k| <= K - 2 the coefficients of
/// (W0 + alpha W1 + beta W2)^* (W0 + alpha W1 + beta W2) match the hatted
/// pencil interpolated from hereditary_value_lattice. Throws if `f` does not
/// factor the hat at tol.
ShiftReport verify_pencil_transfer(const ShiftSpace& sp, const FactorTriple& f,
                                   const HatParams& params, double tol);

}  // namespace plift
