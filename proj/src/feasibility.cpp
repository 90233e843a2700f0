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

#include "plift/feasibility.hpp"

#include <cmath>
#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <vector>
#include <sstream>

namespace plift {

std::string to_string(FeasibilityKind kind) {
  switch (kind) {
    case FeasibilityKind::Feasible: return "Feasible";
    case FeasibilityKind::Infeasible: return "Infeasible";
    case FeasibilityKind::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

// Block (k, l) of the Gram matrix pairs V_k with V_l; these are the pencil
// coefficients whose Hermitian parts the off-diagonal blocks must carry.
const HermMatrix& diagonal_target(const QuadraticPencil& p, int k) {
  switch (k) {
    case 0: return p.coeff(0, 0);
    case 1: return p.coeff(2, 0);
    default: return p.coeff(0, 2);
  }
}

const HermMatrix& off_diagonal_target(const QuadraticPencil& p, int k, int l) {
  if (k == 0 && l == 1) return p.coeff(1, 0);
  if (k == 0 && l == 2) return p.coeff(0, 1);
  return p.coeff(1, 1);
}

CMatrix project_affine_raw(const CMatrix& g, const QuadraticPencil& p) {
  const Index n = p.dim();
  CMatrix out = g;
  for (int k = 0; k < 3; ++k) {
    out.block(k * n, k * n, n, n) = diagonal_target(p, k).matrix();
    for (int l = k + 1; l < 3; ++l) {
      const CMatrix blk = g.block(k * n, l * n, n, n);
      const CMatrix skew = (blk - blk.adjoint()) / 2.0;
      const CMatrix fixed = off_diagonal_target(p, k, l).matrix() / 2.0 + skew;
      out.block(k * n, l * n, n, n) = fixed;
      out.block(l * n, k * n, n, n) = fixed.adjoint();
    }
  }
  return out;
}

// Normal-space part of the residual, with off-diagonal blocks forced
// Hermitian so that <Z, G> only sees the fixed data.
CMatrix normal_component(const CMatrix& residual, Index n) {
  CMatrix z = (residual + residual.adjoint()) / 2.0;
  for (int k = 0; k < 3; ++k) {
    for (int l = k + 1; l < 3; ++l) {
      const CMatrix blk = z.block(k * n, l * n, n, n);
      const CMatrix herm = (blk + blk.adjoint()) / 2.0;
      z.block(k * n, l * n, n, n) = herm;
      z.block(l * n, k * n, n, n) = herm;
    }
  }
  return z;
}

// Positive return value certifies that no PSD matrix meets the constraints.
double separation_margin(const CMatrix& residual, const QuadraticPencil& p) {
  const Index n = p.dim();
  const CMatrix z = normal_component(residual, n);
  const double znorm = z.norm();
  if (znorm == 0.0) return -1.0;
  const CMatrix center = affine_center(p).matrix();
  const double pairing = (z.adjoint() * center).trace().real();
  const double trace = center.trace().real();
  const double lam = eig_hermitian(HermMatrix::symmetrized(z)).eigenvalues(0);
  const double bound = std::min(lam, 0.0) * trace;
  // Rounding in the pairing and the eigenvalue is far below this slack.
  const double slack = 1e-9 * znorm * (1.0 + center.norm());
  return (bound - pairing - slack) / znorm;
}


// Constraint residual of G as a real vector whose Euclidean norm equals
// |G - P_A(G)|_F: three diagonal blocks and the Hermitian parts of three
// off-diagonal blocks (counted twice in G, hence the sqrt 2 weight), each
// stored through its upper triangle.
void push_hermitian(const CMatrix& d, double weight, std::vector<double>& out) {
  const double off = weight * std::sqrt(2.0);
  for (Index i = 0; i < d.rows(); ++i) {
    out.push_back(weight * d(i, i).real());
    for (Index j = i + 1; j < d.cols(); ++j) {
      out.push_back(off * d(i, j).real());
      out.push_back(off * d(i, j).imag());
    }
  }
}

// With `p` null only the linear part (for Jacobian columns) is produced.
RVector constraint_residual(const CMatrix& g, const QuadraticPencil* p, Index n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(6 * n * n));
  for (int k = 0; k < 3; ++k) {
    CMatrix d = g.block(k * n, k * n, n, n);
    if (p) d -= diagonal_target(*p, k).matrix();
    push_hermitian(d, 1.0, out);
  }
  for (int k = 0; k < 3; ++k) {
    for (int l = k + 1; l < 3; ++l) {
      const CMatrix blk = g.block(k * n, l * n, n, n);
      CMatrix d = (blk + blk.adjoint()) / 2.0;
      if (p) d -= off_diagonal_target(*p, k, l).matrix() / 2.0;
      push_hermitian(d, std::sqrt(2.0), out);
    }
  }
  return Eigen::Map<RVector>(out.data(), static_cast<Index>(out.size()));
}

constexpr Index kPolishMaxDim = 8;
constexpr int kPolishFirst = 100;
constexpr int kPolishSteps = 80;
// A run is abandoned when this many steps fail to halve the residual.
constexpr int kPolishPatience = 15;

// Levenberg-Marquardt on G = Y^* Y from the factor `y` (r x 3n). Any Y it
// returns gives an exactly PSD Gram matrix.
std::optional<HermMatrix> levenberg_marquardt(CMatrix y, const QuadraticPencil& p, double tol) {
  const Index n = p.dim();
  const Index rank = y.rows();
  const Index dim = y.cols();
  auto gram = [](const CMatrix& f) { return CMatrix(f.adjoint() * f); };
  RVector r = constraint_residual(gram(y), &p, n);
  double mu = -1.0;
  Eigen::MatrixXd jac(r.size(), 2 * rank * dim);
  CMatrix dg = CMatrix::Zero(dim, dim);
  double checkpoint = r.norm();
  int since_checkpoint = 0;

  for (int step = 0; step < kPolishSteps && r.norm() > tol / 2; ++step) {
    Index col = 0;
    for (Index i = 0; i < rank; ++i) {
      for (Index j = 0; j < dim; ++j) {
        for (int part = 0; part < 2; ++part) {
          const Complex unit = part == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
          dg.setZero();
          dg.col(j) += unit * y.row(i).adjoint();
          dg.row(j) += std::conj(unit) * y.row(i);
          jac.col(col++) = constraint_residual(dg, nullptr, n);
        }
      }
    }
    const Eigen::MatrixXd normal = jac * jac.transpose();
    if (mu < 0.0) mu = 1e-6 * std::max(1.0, normal.diagonal().maxCoeff());

    bool improved = false;
    for (int tries = 0; tries < 20 && !improved; ++tries) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal().array() += mu;
      const RVector delta = jac.transpose() * damped.ldlt().solve(-r);
      CMatrix trial = y;
      Index k = 0;
      for (Index i = 0; i < rank; ++i)
        for (Index j = 0; j < dim; ++j, k += 2) trial(i, j) += Complex(delta(k), delta(k + 1));
      const RVector rt = constraint_residual(gram(trial), &p, n);
      if (rt.allFinite() && rt.norm() < r.norm()) {
        y = std::move(trial);
        r = rt;
        mu = std::max(mu / 3.0, 1e-15);
        improved = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!improved) break;
    if (r.norm() <= checkpoint / 2) {
      checkpoint = r.norm();
      since_checkpoint = 0;
    } else if (++since_checkpoint >= kPolishPatience) {
      break;
    }
  }
  if (!(r.norm() <= tol)) return std::nullopt;
  return HermMatrix::symmetrized(gram(y));
}

// Refines a PSD iterate by Levenberg-Marquardt on a Gram factor. Dykstra
// crawls when the feasible set has empty interior, and a full-size factor is
// degenerate at a low-rank solution. Ranks tried: n (the least possible when
// B00 is definite), the two widest drops in the spectrum of the iterate, 3n.
std::optional<HermMatrix> polish(const HermMatrix& start, const QuadraticPencil& p, double tol) {
  const EigenDecomposition eig = eig_hermitian(start);
  const RVector lam = eig.eigenvalues.cwiseMax(0.0);
  const Index dim = lam.size();
  const double floor = 1e-14 * std::max(lam(dim - 1), 1e-300);

  // Eigenvalues ascend, so rank r keeps the last r.
  std::vector<std::pair<double, Index>> drops;
  for (Index r = 1; r < dim; ++r) {
    const double upper = lam(dim - r);
    const double lower = std::max(lam(dim - r - 1), floor);
    drops.emplace_back(upper / lower, r);
  }
  std::sort(drops.begin(), drops.end(), std::greater<>());
  std::vector<Index> ranks{dim / 3};
  for (std::size_t i = 0; i < drops.size() && i < 2; ++i) ranks.push_back(drops[i].second);
  ranks.push_back(dim);
  std::vector<Index> seen;
  for (const Index r : ranks) {
    if (std::find(seen.begin(), seen.end(), r) == seen.end()) seen.push_back(r);
  }

  for (const Index r : seen) {
    const CMatrix y = lam.tail(r).cwiseSqrt().cast<Complex>().asDiagonal() *
                      eig.eigenvectors.rightCols(r).adjoint();
    if (auto g = levenberg_marquardt(y, p, tol)) return g;
  }
  return std::nullopt;
}

}  // namespace

HermMatrix affine_center(const QuadraticPencil& p) {
  const Index n = p.dim();
  return HermMatrix::symmetrized(project_affine_raw(CMatrix::Zero(3 * n, 3 * n), p));
}

HermMatrix project_affine(const HermMatrix& g, const QuadraticPencil& p) {
  if (g.dim() != 3 * p.dim()) throw DimensionError("project_affine: expected a 3n x 3n matrix");
  return HermMatrix::symmetrized(project_affine_raw(g.matrix(), p));
}

FeasibilityOutcome factor_feasibility(const QuadraticPencil& p,
                                      const FeasibilityOptions& options) {
  if (options.max_iter < 1 || options.window < 1 || !(options.tol > 0.0)) {
    throw Error("factor_feasibility: max_iter, window and tol must be positive");
  }
  // Dykstra with one affine set: its correction term lies in the normal
  // space and never changes the affine projection, so only the cone
  // correction is carried.
  CMatrix x = affine_center(p).matrix();
  CMatrix corr = CMatrix::Zero(x.rows(), x.cols());
  std::deque<double> history;

  FeasibilityOutcome out;
  const bool can_polish = options.polish && p.dim() <= kPolishMaxDim;
  int next_polish = kPolishFirst;
  auto try_polish = [&](const HermMatrix& y) {
    std::optional<HermMatrix> g = polish(y, p, options.tol);
    if (!g) return false;
    out.kind = FeasibilityKind::Feasible;
    out.gap = (g->matrix() - project_affine_raw(g->matrix(), p)).norm();
    out.gram = std::move(g);
    return true;
  };
  for (int it = 1; it <= options.max_iter; ++it) {
    const CMatrix shifted = x + corr;
    const HermMatrix y = project_psd(HermMatrix::symmetrized(shifted));
    corr = shifted - y.matrix();
    x = project_affine_raw(y.matrix(), p);
    const CMatrix residual = y.matrix() - x;
    const double gap = residual.norm();

    out.gap = gap;
    out.iterations = it;
    if (gap <= options.tol) {
      out.kind = FeasibilityKind::Feasible;
      out.gram = y;
      return out;
    }

    if (can_polish && it >= next_polish) {
      next_polish = 2 * it;
      if (try_polish(y)) return out;
    }

    history.push_back(gap);
    if (static_cast<int>(history.size()) > options.window) history.pop_front();
    const bool stalled = static_cast<int>(history.size()) == options.window &&
                         std::abs(history.front() - gap) <= options.stall_tol * gap;
    const bool last = it == options.max_iter;
    if ((stalled && it % 10 == 0 && gap > options.infeas_threshold) ||
        (last && gap > options.infeas_threshold)) {
      const double margin = separation_margin(residual, p);
      if (margin > 0.0) {
        out.kind = FeasibilityKind::Infeasible;
        out.certificate_margin = margin;
        return out;
      }
    }
    if (last && can_polish && try_polish(y)) return out;
  }
  out.kind = FeasibilityKind::Undetermined;
  return out;
}

FeasibilityOutcome factor_feasibility(const QuadraticPencil& p, int max_iter, double tol,
                                      double infeas_threshold) {
  FeasibilityOptions options;
  options.max_iter = max_iter;
  options.tol = tol;
  options.infeas_threshold = infeas_threshold;
  return factor_feasibility(p, options);
}

FactorTriple gram_to_factors(const HermMatrix& g, double tol) {
  if (g.dim() % 3 != 0) {
    std::ostringstream ss;
    ss << "gram_to_factors: dimension " << g.dim() << " is not a multiple of 3";
    throw DimensionError(ss.str());
  }
  const Index n = g.dim() / 3;
  const CMatrix y = gram_factor(g, tol);
  return FactorTriple{y.leftCols(n), y.middleCols(n, n), y.rightCols(n)};
}

}  // namespace plift
