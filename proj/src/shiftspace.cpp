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

#include "plift/shiftspace.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "plift/jordan.hpp"

namespace plift {

namespace {

std::string site_name(Site s) {
  std::ostringstream ss;
  ss << "(" << s.first << "," << s.second << ")";
  return ss.str();
}

void require_dense_cap(const ShiftSpace& sp, Index cap) {
  if (sp.total_dim() > cap) {
    std::ostringstream ss;
    ss << "ShiftSpace: dense dimension " << sp.total_dim() << " exceeds the cap " << cap;
    throw Error(ss.str());
  }
}

}  // namespace

//=========================================================================
// ShiftSpace
//=========================================================================

ShiftSpace ShiftSpace::build(const QuadraticPencil& p, int K, double tol) {
  if (K < 0) throw Error("ShiftSpace: K must be non-negative");
  std::vector<HermMatrix> blocks;
  for (int j = -K; j <= K; ++j)
    for (int k = -K; k <= K; ++k) blocks.push_back(evaluate(p, j, k));
  return from_gram_blocks(p, K, std::move(blocks), tol);
}

ShiftSpace ShiftSpace::from_gram_blocks(const QuadraticPencil& p, int K,
                                        std::vector<HermMatrix> blocks, double tol) {
  if (K < 0) throw Error("ShiftSpace: K must be non-negative");
  const std::size_t side = static_cast<std::size_t>(2 * K + 1);
  if (blocks.size() != side * side) {
    throw DimensionError("ShiftSpace: expected one Gram block per lattice site");
  }
  ShiftSpace sp;
  sp.pencil_ = p;
  sp.K_ = K;
  sp.blocks_ = std::move(blocks);
  for (std::size_t i = 0; i < sp.blocks_.size(); ++i) {
    if (sp.blocks_[i].dim() != p.dim()) {
      throw DimensionError("ShiftSpace: Gram block dimension differs from the pencil");
    }
    const PsdVerdict v = psd_check(sp.blocks_[i], tol);
    if (v.kind != PsdKind::PositiveDefinite) {
      const Site s = sp.site_at(i);
      std::ostringstream ss;
      ss << "ShiftSpace: Gram block at site " << site_name(s)
         << " is not positive definite (min eigenvalue " << v.min_eigenvalue << ")";
      throw BlockNotPositiveError(ss.str(), s, v.min_eigenvalue, v.witness.value_or(CVector()));
    }
  }
  return sp;
}

bool ShiftSpace::contains(Site s) const {
  return std::abs(s.first) <= K_ && std::abs(s.second) <= K_;
}

std::size_t ShiftSpace::site_index(Site s) const {
  if (!contains(s)) throw Error("ShiftSpace: site " + site_name(s) + " is outside the lattice");
  return static_cast<std::size_t>((s.first + K_) * side() + (s.second + K_));
}

Site ShiftSpace::site_at(std::size_t index) const {
  const int i = static_cast<int>(index);
  return {i / side() - K_, i % side() - K_};
}

HermMatrix ShiftSpace::gram_dense(Index cap) const {
  require_dense_cap(*this, cap);
  const Index n = dim_h();
  CMatrix g = CMatrix::Zero(total_dim(), total_dim());
  for (std::size_t i = 0; i < site_count(); ++i) {
    const Index off = n * static_cast<Index>(i);
    g.block(off, off, n, n) = blocks_[i].matrix();
  }
  return HermMatrix::symmetrized(g);
}

CMatrix ShiftSpace::shift_dense(Shift which, Index cap) const {
  require_dense_cap(*this, cap);
  const Index n = dim_h();
  CMatrix t = CMatrix::Zero(total_dim(), total_dim());
  for (std::size_t i = 0; i < site_count(); ++i) {
    const Site s = site_at(i);
    const Site to = which == Shift::T ? Site{s.first + 1, s.second} : Site{s.first, s.second + 1};
    if (!contains(to)) continue;
    const Index row = n * static_cast<Index>(site_index(to));
    const Index col = n * static_cast<Index>(i);
    t.block(row, col, n, n) = CMatrix::Identity(n, n);
  }
  return t;
}

CMatrix ShiftSpace::interior_embedding(int margin) const {
  const Index n = dim_h();
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < site_count(); ++i) {
    const Site s = site_at(i);
    if (std::abs(s.first) <= K_ - margin && std::abs(s.second) <= K_ - margin) sites.push_back(i);
  }
  CMatrix p = CMatrix::Zero(total_dim(), n * static_cast<Index>(sites.size()));
  for (std::size_t c = 0; c < sites.size(); ++c) {
    p.block(n * static_cast<Index>(sites[c]), n * static_cast<Index>(c), n, n) =
        CMatrix::Identity(n, n);
  }
  return p;
}

CMatrix ShiftSpace::site_embedding(Site s) const {
  const Index n = dim_h();
  CMatrix p = CMatrix::Zero(total_dim(), n);
  p.block(n * static_cast<Index>(site_index(s)), 0, n, n) = CMatrix::Identity(n, n);
  return p;
}

ShiftSpace perturb_cubic(const ShiftSpace& sp, double kappa) {
  std::vector<HermMatrix> blocks;
  const Index n = sp.dim_h();
  for (std::size_t i = 0; i < sp.site_count(); ++i) {
    const Site s = sp.site_at(i);
    const double shift = static_cast<double>(s.first + sp.K());
    blocks.push_back(sp.block(s) + HermMatrix::identity(n) * (kappa * shift * shift * shift));
  }
  return ShiftSpace::from_gram_blocks(sp.pencil(), sp.K(), std::move(blocks));
}

//=========================================================================
// Lattice vectors
//=========================================================================

LatticeVector delta_vector(Site s, const CVector& h) {
  LatticeVector v;
  v.coefficients[s] = h;
  return v;
}

LatticeVector apply_shift(const ShiftSpace& sp, const LatticeVector& v, Shift which, int power) {
  if (power < 0) throw Error("apply_shift: power must be non-negative");
  LatticeVector out;
  for (const auto& [s, h] : v.coefficients) {
    if (!sp.contains(s)) throw Error("apply_shift: input site " + site_name(s) + " is outside");
    if (h.size() != sp.dim_h()) throw DimensionError("apply_shift: coefficient has wrong size");
    const Site to = which == Shift::T ? Site{s.first + power, s.second}
                                      : Site{s.first, s.second + power};
    if (!sp.contains(to)) {
      throw Error("apply_shift: site " + site_name(s) + " shifts to " + site_name(to) +
                  ", outside the lattice");
    }
    out.coefficients[to] = h;
  }
  return out;
}

Complex lattice_inner(const ShiftSpace& sp, const LatticeVector& x, const LatticeVector& y) {
  Complex sum = 0.0;
  for (const auto& [s, hx] : x.coefficients) {
    auto it = y.coefficients.find(s);
    if (it == y.coefficients.end()) continue;
    sum += it->second.dot(sp.block(s).matrix() * hx);
  }
  return sum;
}

std::vector<Site> interior_sites(const ShiftSpace& sp, int n, int m, int margin) {
  if (n < 0 || m < 0 || margin < 0 || n + margin > sp.K() || m + margin > sp.K()) {
    std::ostringstream ss;
    ss << "interior_sites: powers (" << n << "," << m << ") with margin " << margin
       << " do not fit in K = " << sp.K();
    throw Error(ss.str());
  }
  std::vector<Site> out;
  for (int j = -sp.K() + margin; j <= sp.K() - margin - n; ++j)
    for (int k = -sp.K() + margin; k <= sp.K() - margin - m; ++k) out.emplace_back(j, k);
  return out;
}

std::map<Site, HermMatrix> hereditary_value_lattice(const ShiftSpace& sp, int n, int m,
                                                    int interior_margin) {
  const Index dim = sp.dim_h();
  std::map<Site, HermMatrix> out;
  for (const Site& s : interior_sites(sp, n, m, interior_margin)) {
    std::vector<LatticeVector> images;
    for (Index b = 0; b < dim; ++b) {
      LatticeVector v = delta_vector(s, CVector::Unit(dim, b));
      if (n > 0) v = apply_shift(sp, v, Shift::T, n);
      if (m > 0) v = apply_shift(sp, v, Shift::S, m);
      images.push_back(std::move(v));
    }
    CMatrix value(dim, dim);
    for (Index a = 0; a < dim; ++a)
      for (Index b = 0; b < dim; ++b) value(a, b) = lattice_inner(sp, images[b], images[a]);
    out.emplace(s, HermMatrix::symmetrized(value));
  }
  return out;
}

//=========================================================================
// Verification
//=========================================================================

double ShiftReport::worst(const std::string& check_prefix) const {
  double w = 0.0;
  for (const auto& e : entries)
    if (e.check.rfind(check_prefix, 0) == 0) w = std::max(w, e.residual);
  return w;
}

namespace {

// |L P^* G R P L|_F for R = T#^3 T^3 - 3 T#^2 T^2 + 3 T# T - I.
double dense_three_isometry_residual(const ShiftSpace& sp, Shift which) {
  const Index n = sp.dim_h();
  const Index total = sp.total_dim();
  const CMatrix t = sp.shift_dense(which);
  const HermMatrix g = sp.gram_dense();

  CMatrix g_inv = CMatrix::Zero(total, total);
  for (std::size_t i = 0; i < sp.site_count(); ++i) {
    const Index off = n * static_cast<Index>(i);
    const CMatrix blk = sp.block(sp.site_at(i)).matrix();
    g_inv.block(off, off, n, n) = blk.llt().solve(CMatrix::Identity(n, n));
  }
  const CMatrix t_sharp = g_inv * t.adjoint() * g.matrix();
  const CMatrix a1 = t_sharp * t;
  const CMatrix a2 = t_sharp * a1 * t;
  const CMatrix a3 = t_sharp * a2 * t;
  const CMatrix r = a3 - 3.0 * a2 + 3.0 * a1 - CMatrix::Identity(total, total);

  const CMatrix p = sp.interior_embedding(3);
  const CMatrix pairing = p.adjoint() * g.matrix() * r * p;
  const HermMatrix g_int = HermMatrix::symmetrized(p.adjoint() * g.matrix() * p);
  CMatrix l = CMatrix::Zero(g_int.dim(), g_int.dim());
  for (Index off = 0; off < g_int.dim(); off += n) {
    l.block(off, off, n, n) =
        inv_sqrt(HermMatrix::symmetrized(g_int.matrix().block(off, off, n, n))).matrix();
  }
  return (l * pairing * l).norm();
}

}  // namespace

ShiftReport verify_3isometry(const ShiftSpace& sp, double tol) {
  if (sp.K() < 4) throw Error("verify_3isometry: K must be at least 4");
  ShiftReport report;
  report.tol = tol;
  const int K = sp.K();
  for (int j = -K; j <= K; ++j) {
    for (int k = -K; k <= K; ++k) {
      if (j + 3 <= K) {
        const CMatrix d = sp.block({j + 3, k}).matrix() - 3.0 * sp.block({j + 2, k}).matrix() +
                          3.0 * sp.block({j + 1, k}).matrix() - sp.block({j, k}).matrix();
        report.entries.push_back({Site{j, k}, "third difference T", d.norm()});
      }
      if (k + 3 <= K) {
        const CMatrix d = sp.block({j, k + 3}).matrix() - 3.0 * sp.block({j, k + 2}).matrix() +
                          3.0 * sp.block({j, k + 1}).matrix() - sp.block({j, k}).matrix();
        report.entries.push_back({Site{j, k}, "third difference S", d.norm()});
      }
    }
  }
  report.entries.push_back({std::nullopt, "matrix T", dense_three_isometry_residual(sp, Shift::T)});
  report.entries.push_back({std::nullopt, "matrix S", dense_three_isometry_residual(sp, Shift::S)});
  return report;
}

ShiftReport verify_pencil_transfer(const ShiftSpace& sp, const FactorTriple& f,
                                   const HatParams& params, double tol) {
  const QuadraticPencil& p = sp.pencil();
  if (!verify_factorization(hat(p, params), f, tol)) {
    throw Error("verify_pencil_transfer: the triple does not factor the hat of the pencil");
  }
  if (sp.K() < 2) throw Error("verify_pencil_transfer: K must be at least 2");
  ShiftReport report;
  report.tol = tol;
  const Index n = sp.dim_h();
  const int K = sp.K();
  const HermMatrix gamma = hat_correction(p, params);

  // U h = h (x) f0 (x) f0 has |Uh|^2 = <Q(0,0) h, h>.
  report.entries.push_back({Site{0, 0}, "embedding isometry",
                            (sp.block({0, 0}).matrix() - CMatrix::Identity(n, n)).norm()});

  for (int j = -K; j <= K; ++j) {
    for (int k = -K; k <= K; ++k) {
      const CMatrix x = f.v0 + double(j) * f.v1 + double(k) * f.v2;
      const CMatrix lhs = x.adjoint() * x + gamma.matrix();
      report.entries.push_back(
          {Site{j, k}, "W0 hat isometry", (lhs - sp.block({j, k}).matrix()).norm()});
    }
  }

  std::array<std::map<Site, HermMatrix>, 6> values;
  for (std::size_t i = 0; i < kMonomials.size(); ++i) {
    values[i] = hereditary_value_lattice(sp, kMonomials[i].i, kMonomials[i].j, 0);
  }
  for (int j = -(K - 2); j <= K - 2; ++j) {
    for (int k = -(K - 2); k <= K - 2; ++k) {
      std::array<CMatrix, 6> local;
      for (std::size_t i = 0; i < kMonomials.size(); ++i) local[i] = values[i].at({j, k}).matrix();
      const QuadraticPencil site_hat = hat(interpolate_pencil(local), params);
      const CMatrix x = f.v0 + double(j) * f.v1 + double(k) * f.v2;
      const FactorTriple w{x, f.v1, f.v2};
      double worst = 0.0;
      for (double r : factorization_residuals(site_hat, w)) worst = std::max(worst, r);
      report.entries.push_back({Site{j, k}, "W coefficients", worst});
    }
  }

  // The pencil fitted to the dense shifts compressed to the origin is p itself.
  const auto fit = fit_pencil_detailed(sp.shift_dense(Shift::T), sp.shift_dense(Shift::S),
                                       sp.gram_dense(), sp.site_embedding({0, 0}));
  double worst = fit.validation_residual;
  for (std::size_t i = 0; i < kMonomials.size(); ++i) {
    worst = std::max(worst, (fit.candidate.coeffs()[i].matrix() - p.coeffs()[i].matrix()).norm());
  }
  report.entries.push_back({Site{0, 0}, "fitted pencil at origin", worst});
  return report;
}

}  // namespace plift
