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

#include "plift/pencil.hpp"

#include <cmath>
#include <sstream>

namespace plift {

std::size_t monomial_slot(int i, int j) {
  for (std::size_t k = 0; k < kMonomials.size(); ++k)
    if (kMonomials[k].i == i && kMonomials[k].j == j) return k;
  std::ostringstream ss;
  ss << "no pencil coefficient for monomial (" << i << "," << j << ")";
  throw Error(ss.str());
}

std::string monomial_key(const Monomial& m) {
  return std::to_string(m.i) + std::to_string(m.j);
}

HatParams HatParams::checked(double c, double d) {
  if (!(std::isfinite(c) && std::isfinite(d) && c > 0.0 && d > 0.0)) {
    std::ostringstream ss;
    ss << "HatParams: c and d must be positive, got c=" << c << " d=" << d;
    throw Error(ss.str());
  }
  return HatParams{c, d};
}

void FactorTriple::validate() const {
  if (v1.rows() != v0.rows() || v2.rows() != v0.rows() || v1.cols() != v0.cols() ||
      v2.cols() != v0.cols()) {
    throw DimensionError("FactorTriple: V0, V1, V2 must share their shape");
  }
}

//=========================================================================
// QuadraticPencil
//=========================================================================

QuadraticPencil::QuadraticPencil(std::array<HermMatrix, 6> coeffs) : coeffs_(std::move(coeffs)) {
  const Index n = coeffs_[0].dim();
  for (const auto& b : coeffs_) {
    if (b.dim() != n) throw DimensionError("QuadraticPencil: coefficient dimensions differ");
  }
  monic_ = (coeffs_[0].matrix() - CMatrix::Identity(n, n)).norm() <= 1e-12;
}

QuadraticPencil QuadraticPencil::from_factors(const FactorTriple& f) {
  f.validate();
  const CMatrix& v0 = f.v0;
  const CMatrix& v1 = f.v1;
  const CMatrix& v2 = f.v2;
  auto sym = [](const CMatrix& x, const CMatrix& y) {
    return HermMatrix::symmetrized(x.adjoint() * y + y.adjoint() * x);
  };
  return QuadraticPencil({HermMatrix::symmetrized(v0.adjoint() * v0), sym(v0, v1), sym(v0, v2),
                          sym(v1, v2), HermMatrix::symmetrized(v1.adjoint() * v1),
                          HermMatrix::symmetrized(v2.adjoint() * v2)});
}

QuadraticPencil QuadraticPencil::with_coeff(int i, int j, HermMatrix value) const {
  auto coeffs = coeffs_;
  coeffs[monomial_slot(i, j)] = std::move(value);
  return QuadraticPencil(std::move(coeffs));
}

HermMatrix evaluate(const QuadraticPencil& p, double alpha, double beta) {
  HermMatrix out = p.coeff(0, 0);
  out += p.coeff(1, 0) * alpha;
  out += p.coeff(0, 1) * beta;
  out += p.coeff(1, 1) * (alpha * beta);
  out += p.coeff(2, 0) * (alpha * alpha);
  out += p.coeff(0, 2) * (beta * beta);
  return out;
}

HermMatrix hat_correction(const QuadraticPencil& p, const HatParams& params) {
  return p.coeff(2, 0) * (1.0 / (params.c * params.c)) +
         p.coeff(0, 2) * (1.0 / (params.d * params.d));
}

QuadraticPencil hat(const QuadraticPencil& p, const HatParams& params) {
  return p.with_coeff(0, 0, p.coeff(0, 0) - hat_correction(p, params));
}

std::array<double, 6> factorization_residuals(const QuadraticPencil& p, const FactorTriple& f) {
  f.validate();
  if (f.source_dim() != p.dim()) {
    throw DimensionError("factorization_residuals: factor source dimension differs from pencil");
  }
  const QuadraticPencil expanded = QuadraticPencil::from_factors(f);
  std::array<double, 6> out{};
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    out[k] = (expanded.coeffs()[k].matrix() - p.coeffs()[k].matrix()).norm();
  }
  return out;
}

bool verify_factorization(const QuadraticPencil& p, const FactorTriple& f, double tol) {
  for (double r : factorization_residuals(p, f))
    if (!(r <= tol)) return false;
  return true;
}

QuadraticPencil interpolate_pencil(const std::array<CMatrix, 6>& values) {
  const CMatrix& q00 = values[monomial_slot(0, 0)];
  const CMatrix& q10 = values[monomial_slot(1, 0)];
  const CMatrix& q01 = values[monomial_slot(0, 1)];
  const CMatrix& q11 = values[monomial_slot(1, 1)];
  const CMatrix& q20 = values[monomial_slot(2, 0)];
  const CMatrix& q02 = values[monomial_slot(0, 2)];
  const CMatrix b20 = (q20 - 2.0 * q10 + q00) / 2.0;
  const CMatrix b02 = (q02 - 2.0 * q01 + q00) / 2.0;
  return QuadraticPencil({HermMatrix::symmetrized(q00), HermMatrix::symmetrized(q10 - q00 - b20),
                          HermMatrix::symmetrized(q01 - q00 - b02),
                          HermMatrix::symmetrized(q11 - q10 - q01 + q00),
                          HermMatrix::symmetrized(b20), HermMatrix::symmetrized(b02)});
}

//=========================================================================
// Real bivariate quadratics
//=========================================================================

ScalarQuadratic directional_quadratic(const QuadraticPencil& pencil, const CVector& x) {
  auto form = [&](int i, int j) { return x.dot(pencil.coeff(i, j).matrix() * x).real(); };
  ScalarQuadratic q;
  q.a = form(0, 0);
  q.b1 = form(1, 0) / 2.0;
  q.b2 = form(0, 1) / 2.0;
  q.r = form(1, 1) / 2.0;
  q.p = form(2, 0);
  q.s = form(0, 2);
  return q;
}

namespace {

struct Sym2Eigen {
  double lo, hi;
  Eigen::Vector2d u_lo, u_hi;
};

Sym2Eigen eig2(double p, double r, double s) {
  Eigen::Matrix2d a;
  a << p, r, r, s;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a);
  return {es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvectors().col(0),
          es.eigenvectors().col(1)};
}

// Pushes along the ray t * u, in the direction that makes the linear term
// non-positive, until q turns negative.
std::optional<std::pair<double, double>> ray_witness(const ScalarQuadratic& q,
                                                     const Eigen::Vector2d& u, double tol) {
  const double lin = q.b1 * u(0) + q.b2 * u(1);
  const double sign = lin > 0.0 ? -1.0 : 1.0;
  double t = 1.0;
  for (int k = 0; k < 200; ++k, t *= 2.0) {
    const double alpha = sign * t * u(0);
    const double beta = sign * t * u(1);
    if (q(alpha, beta) < -tol) return std::make_pair(alpha, beta);
  }
  return std::nullopt;
}

}  // namespace

bool scalar_quadratic_nonneg(double a, double b1, double b2, double p, double r, double s,
                             double tol) {
  const Sym2Eigen e = eig2(p, r, s);
  if (e.lo < -tol) return false;
  const Eigen::Vector2d b(b1, b2);
  double schur = a;
  for (const auto& [lam, u] : {std::pair{e.lo, e.u_lo}, std::pair{e.hi, e.u_hi}}) {
    const double proj = u.dot(b);
    if (lam > tol) {
      schur -= proj * proj / lam;
    } else if (std::abs(proj) > tol) {
      return false;
    }
  }
  return schur >= -tol;
}

std::optional<std::pair<double, double>> scalar_quadratic_witness(const ScalarQuadratic& q,
                                                                  double tol) {
  const Sym2Eigen e = eig2(q.p, q.r, q.s);
  if (e.lo < -tol) return ray_witness(q, e.u_lo, tol);

  const Eigen::Vector2d b(q.b1, q.b2);
  Eigen::Vector2d z = Eigen::Vector2d::Zero();  // -A^+ b
  for (const auto& [lam, u] : {std::pair{e.lo, e.u_lo}, std::pair{e.hi, e.u_hi}}) {
    const double proj = u.dot(b);
    if (lam > tol) {
      z -= (proj / lam) * u;
    } else if (std::abs(proj) > tol) {
      return ray_witness(q, u, tol);
    }
  }
  if (q(z(0), z(1)) < -tol) return std::make_pair(z(0), z(1));
  return std::nullopt;
}

//=========================================================================
// Normalization and parameter search
//=========================================================================

QuadraticPencil monicize(const QuadraticPencil& p, double epsilon, double tol) {
  const Index n = p.dim();
  const HermMatrix shifted = p.coeff(0, 0) + HermMatrix::identity(n) * epsilon;
  const HermMatrix delta = inv_sqrt(shifted, tol);
  std::array<HermMatrix, 6> coeffs;
  for (std::size_t k = 1; k < kMonomials.size(); ++k) {
    coeffs[k] = p.coeffs()[k].congruence(delta.matrix());
  }
  const HermMatrix unit = shifted.congruence(delta.matrix());
  const double drift = (unit.matrix() - CMatrix::Identity(n, n)).norm();
  if (drift > 1e-8) {
    std::ostringstream ss;
    ss << "monicize: normalized constant term deviates from I by " << drift;
    throw Error(ss.str());
  }
  coeffs[0] = HermMatrix::identity(n);
  return QuadraticPencil(std::move(coeffs));
}

std::vector<double> grid_points(double radius, int steps) {
  if (steps < 1) throw Error("grid_points: steps must be at least 1");
  if (steps == 1) return {0.0};
  std::vector<double> pts(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    pts[static_cast<std::size_t>(i)] = -radius + 2.0 * radius * i / (steps - 1);
  }
  return pts;
}

double grid_min_eigenvalue(const QuadraticPencil& p, double radius, int steps) {
  double best = std::numeric_limits<double>::infinity();
  const auto pts = grid_points(radius, steps);
  for (double alpha : pts) {
    for (double beta : pts) {
      best = std::min(best, eig_hermitian(evaluate(p, alpha, beta)).eigenvalues(0));
    }
  }
  return best;
}

std::optional<HatParams> suggest_cd_for_delta(const QuadraticPencil& p, double delta,
                                              double tol) {
  if (!(delta > tol)) return std::nullopt;
  const Index n = p.dim();
  const HermMatrix load = p.coeff(0, 2) + p.coeff(2, 0);
  auto admissible = [&](double c) {
    const HermMatrix slack = HermMatrix::identity(n) * delta - load * (1.0 / (c * c));
    return psd_check(slack, tol).kind != PsdKind::Indefinite;
  };

  double hi = kCdScheduleMin;
  if (admissible(hi)) return HatParams{hi, hi};
  int doublings = 0;
  while (!admissible(hi)) {
    hi *= 2.0;
    if (++doublings > 200) return std::nullopt;
  }
  double lo = hi / 2.0;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? hi : lo) = mid;
  }
  return HatParams{hi, hi};
}

std::optional<CdSuggestion> suggest_cd(const QuadraticPencil& p, double grid_radius,
                                       int grid_steps, double tol) {
  if (!p.monic()) throw Error("suggest_cd: pencil must be monic");
  const double delta = grid_min_eigenvalue(p, grid_radius, grid_steps);
  const auto params = suggest_cd_for_delta(p, delta, tol);
  if (!params) return std::nullopt;
  return CdSuggestion{*params, delta};
}

std::pair<QuadraticPencil, FactorTriple> monic_from_hat_factors(const FactorTriple& f,
                                                                const HatParams& params,
                                                                double tol) {
  f.validate();
  const CMatrix m = f.v0.adjoint() * f.v0 +
                    f.v1.adjoint() * f.v1 / (params.c * params.c) +
                    f.v2.adjoint() * f.v2 / (params.d * params.d);
  const HermMatrix scale = inv_sqrt(HermMatrix::symmetrized(m), tol);
  FactorTriple g{f.v0 * scale.matrix(), f.v1 * scale.matrix(), f.v2 * scale.matrix()};
  const QuadraticPencil hatted = QuadraticPencil::from_factors(g);
  const QuadraticPencil full =
      hatted.with_coeff(0, 0, hatted.coeff(0, 0) + hat_correction(hatted, params));
  const Index n = full.dim();
  const double drift = (full.coeff(0, 0).matrix() - CMatrix::Identity(n, n)).norm();
  if (drift > 1e-8) {
    std::ostringstream ss;
    ss << "monic_from_hat_factors: constant term deviates from I by " << drift;
    throw Error(ss.str());
  }
  return {full.with_coeff(0, 0, HermMatrix::identity(n)), std::move(g)};
}

}  // namespace plift
