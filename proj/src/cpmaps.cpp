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

#include "plift/cpmaps.hpp"

#include <cmath>
#include <sstream>

#include "plift/parallel.hpp"
#include "plift/random.hpp"

namespace plift {

namespace {

CMatrix unit(Index a, Index b) {
  CMatrix e = CMatrix::Zero(3, 3);
  e(a, b) = 1.0;
  return e;
}

CMatrix sym_unit(Index a, Index b) { return a == b ? unit(a, a) : CMatrix(unit(a, b) + unit(b, a)); }

// Position of each basis element's support: (row, col) of its upper entry.
constexpr std::array<std::pair<Index, Index>, 6> kSupport = {
    std::pair<Index, Index>{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 1}, {2, 2}};

double basis_scale(const HatParams& params, const Monomial& m) {
  return std::pow(params.c, m.i) * std::pow(params.d, m.j);
}

}  // namespace

//=========================================================================
// Basis and maps
//=========================================================================

SymBasis SymBasis::make(const HatParams& params) {
  const HatParams checked = HatParams::checked(params.c, params.d);
  SymBasis b;
  b.params = checked;
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    const auto [r, c] = kSupport[k];
    b.elements[k] = HermMatrix::symmetrized(sym_unit(r, c) * basis_scale(checked, kMonomials[k]));
  }
  return b;
}

std::array<Complex, 6> SymBasis::coordinates(const CMatrix& a, double tol) const {
  if (a.rows() != 3 || a.cols() != 3) {
    throw DimensionError("SymBasis::coordinates: expected a 3x3 matrix");
  }
  require_finite(a, "SymBasis::coordinates");
  const double bound = tol * (1.0 + a.norm());
  for (Index i = 0; i < 3; ++i) {
    for (Index j = i + 1; j < 3; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > bound) {
        std::ostringstream ss;
        ss << "SymBasis::coordinates: input is not symmetric at entry (" << i << "," << j
           << "): " << a(i, j) << " vs " << a(j, i);
        throw Error(ss.str());
      }
    }
  }
  std::array<Complex, 6> x;
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    const auto [r, c] = kSupport[k];
    const Complex entry = r == c ? a(r, c) : (a(r, c) + a(c, r)) / 2.0;
    x[k] = entry / basis_scale(params, kMonomials[k]);
  }
  return x;
}

LinearMapSym3 rebased(const LinearMapSym3& m, const HatParams& params) {
  LinearMapSym3 out = m;
  out.params = HatParams::checked(params.c, params.d);
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    const double ratio = basis_scale(out.params, kMonomials[k]) / basis_scale(m.params, kMonomials[k]);
    out.images[k] = m.images[k] * ratio;
  }
  return out;
}

CMatrix choi_formula(const CMatrix& a) {
  if (a.rows() != 3 || a.cols() != 3) throw DimensionError("choi_formula: expected 3x3 input");
  CMatrix out = -a / 3.0;
  out(0, 0) += 2.0 / 3.0 * (a(0, 0) + a(1, 1));
  out(1, 1) += 2.0 / 3.0 * (a(1, 1) + a(2, 2));
  out(2, 2) += 2.0 / 3.0 * (a(2, 2) + a(0, 0));
  return out;
}

LinearMapSym3 choi_map() {
  const SymBasis basis = SymBasis::make(HatParams{1.0, 1.0});
  LinearMapSym3 m;
  m.target_dim = 3;
  m.params = basis.params;
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    m.images[k] = HermMatrix::symmetrized(choi_formula(basis.elements[k].matrix()));
  }
  return m;
}

LinearMapSym3 identity_map(const HatParams& params) {
  const SymBasis basis = SymBasis::make(params);
  LinearMapSym3 m;
  m.target_dim = 3;
  m.params = basis.params;
  m.images = basis.elements;
  return m;
}

LinearMapSym3 zero_map(Index target_dim, const HatParams& params) {
  LinearMapSym3 m;
  m.target_dim = target_dim;
  m.params = HatParams::checked(params.c, params.d);
  m.images.fill(HermMatrix::zero(target_dim));
  return m;
}

LinearMapSym3 map_from_kraus(const std::vector<CMatrix>& kraus, const HatParams& params) {
  if (kraus.empty()) throw Error("map_from_kraus: need at least one operator");
  const Index n = kraus.front().cols();
  const SymBasis basis = SymBasis::make(params);
  LinearMapSym3 m = zero_map(n, params);
  for (const CMatrix& v : kraus) {
    if (v.rows() != 3 || v.cols() != n) {
      throw DimensionError("map_from_kraus: operators must all be 3 x n");
    }
    for (std::size_t k = 0; k < kMonomials.size(); ++k) {
      m.images[k] += basis.elements[k].congruence(v);
    }
  }
  return m;
}

CMatrix apply(const LinearMapSym3& m, const CMatrix& a, const SymBasis& basis) {
  const auto x = basis.coordinates(a);
  const LinearMapSym3 local = rebased(m, basis.params);
  CMatrix out = CMatrix::Zero(m.target_dim, m.target_dim);
  for (std::size_t k = 0; k < kMonomials.size(); ++k) out += x[k] * local.images[k].matrix();
  return out;
}

//=========================================================================
// Choi matrices
//=========================================================================

ChoiMatrix choi_matrix(const LinearMapSym3& m, const SymBasis& basis) {
  const LinearMapSym3 local = rebased(m, basis.params);
  const Index n = m.target_dim;
  CMatrix c = CMatrix::Zero(3 * n, 3 * n);
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    const auto [a, b] = kSupport[k];
    const double scale = basis_scale(basis.params, kMonomials[k]) * (a == b ? 1.0 : 2.0);
    const CMatrix blk = local.images[k].matrix() / scale;
    c.block(a * n, b * n, n, n) = blk;
    c.block(b * n, a * n, n, n) = blk;
  }
  return ChoiMatrix{HermMatrix::symmetrized(c)};
}

ChoiMatrix choi_from_gram(const HermMatrix& g, const HatParams& params) {
  if (g.dim() % 3 != 0) throw DimensionError("choi_from_gram: dimension must be a multiple of 3");
  const Index n = g.dim() / 3;
  const std::array<double, 3> scale = {1.0, params.c, params.d};
  CMatrix c = g.matrix();
  for (Index a = 0; a < 3; ++a)
    for (Index b = 0; b < 3; ++b) c.block(a * n, b * n, n, n) /= scale[a] * scale[b];
  return ChoiMatrix{HermMatrix::symmetrized(c)};
}

QuadraticPencil pencil_from_map(const LinearMapSym3& m, const SymBasis& basis) {
  return QuadraticPencil(rebased(m, basis.params).images);
}

std::string to_string(CpKind kind) {
  switch (kind) {
    case CpKind::CP: return "CP";
    case CpKind::NotCP: return "NotCP";
    case CpKind::Unknown: return "Unknown";
  }
  return "?";
}

CpVerdict is_cp(const LinearMapSym3& m, const SymBasis& basis, double tol,
                const FeasibilityOptions& options) {
  CpVerdict out;
  const ChoiMatrix sym = choi_matrix(m, basis);
  out.symmetrized_choi = psd_check(sym.value, tol);
  if (out.symmetrized_choi.kind != PsdKind::Indefinite) {
    out.kind = CpKind::CP;
    out.representative = sym;
    return out;
  }
  out.feasibility = factor_feasibility(pencil_from_map(m, basis), options);
  switch (out.feasibility->kind) {
    case FeasibilityKind::Feasible:
      out.kind = CpKind::CP;
      out.representative = choi_from_gram(*out.feasibility->gram, basis.params);
      break;
    case FeasibilityKind::Infeasible: out.kind = CpKind::NotCP; break;
    case FeasibilityKind::Undetermined: out.kind = CpKind::Unknown; break;
  }
  return out;
}

PositivitySample is_positive_sampled(const LinearMapSym3& m, const SymBasis& basis, int trials,
                                     std::uint64_t seed, double tol) {
  if (trials < 1) throw Error("is_positive_sampled: trials must be at least 1");
  struct Trial {
    double min_eig;
    CMatrix input;
  };
  std::vector<Trial> results(static_cast<std::size_t>(trials));
  parallel_for(results.size(), [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    Eigen::Matrix3d a;
    if (t % 2 == 0) {
      const RVector v = random_real_vector(3, rng);
      const RVector w = random_real_vector(3, rng);
      a = v * v.transpose() + w * w.transpose();
    } else {
      Eigen::Matrix3d w;
      for (Index j = 0; j < 3; ++j) w.col(j) = random_real_vector(3, rng);
      a = w * w.transpose();
    }
    a /= a.norm();
    const CMatrix input = a.cast<Complex>();
    const CMatrix image = apply(m, input, basis);
    results[t] = {eig_hermitian(HermMatrix::symmetrized(image)).eigenvalues(0), input};
  });

  PositivitySample out;
  out.trials = trials;
  out.worst_min_eigenvalue = results.front().min_eig;
  out.worst_input = results.front().input;
  for (const Trial& r : results) {
    if (r.min_eig < out.worst_min_eigenvalue) {
      out.worst_min_eigenvalue = r.min_eig;
      out.worst_input = r.input;
    }
  }
  out.positive = out.worst_min_eigenvalue >= -tol;
  return out;
}

std::vector<CMatrix> kraus_from_choi(const ChoiMatrix& c, double tol) {
  if (c.value.dim() % 3 != 0) {
    throw DimensionError("kraus_from_choi: dimension must be a multiple of 3");
  }
  const Index n = c.target_dim();
  const CMatrix y = gram_factor(c.value, tol);  // throws with witness if indefinite
  std::vector<CMatrix> kraus;
  for (Index i = 0; i < y.rows(); ++i) {
    CMatrix v(3, n);
    for (Index a = 0; a < 3; ++a) v.row(a) = y.row(i).segment(a * n, n);
    kraus.push_back(std::move(v));
  }

  const double bound = 1e-8 * (1.0 + c.value.matrix().norm());
  for (Index a = 0; a < 3; ++a) {
    for (Index b = 0; b < 3; ++b) {
      CMatrix sum = CMatrix::Zero(n, n);
      for (const CMatrix& v : kraus) sum += v.adjoint() * unit(a, b) * v;
      const double err = (sum - c.block(a, b)).norm();
      if (err > bound) {
        std::ostringstream ss;
        ss << "kraus_from_choi: reproduction error " << err << " on unit (" << a << "," << b
           << ")";
        throw Error(ss.str());
      }
    }
  }
  return kraus;
}

}  // namespace plift
