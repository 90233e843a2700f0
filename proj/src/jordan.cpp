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

#include "plift/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "plift/random.hpp"

namespace plift {

namespace {

double commutator_norm(const CMatrix& a, const CMatrix& b) { return (a * b - b * a).norm(); }

void require_commuting(const CMatrix& a, const CMatrix& b, double tol, const char* what) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError(std::string(what) + ": expected square matrices of equal size");
  }
  const double comm = commutator_norm(a, b);
  if (comm > tol * (1.0 + a.norm() * b.norm())) {
    std::ostringstream ss;
    ss << what << ": inputs do not commute (commutator norm " << comm << ")";
    throw Error(ss.str());
  }
}

CMatrix block_diag3(const CMatrix& u) { return outer_kron(CMatrix::Identity(3, 3), u); }

CMatrix matrix_power(const CMatrix& t, int p) {
  const Index n = t.rows();
  CMatrix base = t;
  if (p < 0) {
    Eigen::PartialPivLU<CMatrix> lu(t);
    base = lu.inverse();
    p = -p;
  }
  CMatrix out = CMatrix::Identity(n, n);
  for (int i = 0; i < p; ++i) out = out * base;
  return out;
}

// f(U) = Z f(D) Z^* for a normal U with Schur form Z D Z^*.
CMatrix normal_function(const CMatrix& u, const ScalarFunction& f) {
  Eigen::ComplexSchur<CMatrix> schur(u);
  const CMatrix& t = schur.matrixT();
  const CMatrix& z = schur.matrixU();
  CVector fd(u.rows());
  for (Index i = 0; i < u.rows(); ++i) fd(i) = f(t(i, i));
  return z * fd.asDiagonal() * z.adjoint();
}

}  // namespace

//=========================================================================
// Models
//=========================================================================

CommutingUnitaryPair CommutingUnitaryPair::checked(CMatrix u1, CMatrix u2, double tol) {
  require_commuting(u1, u2, tol, "CommutingUnitaryPair");
  const Index k = u1.rows();
  for (const CMatrix* u : {&u1, &u2}) {
    const double err = (u->adjoint() * *u - CMatrix::Identity(k, k)).norm();
    if (err > tol * (1.0 + std::sqrt(static_cast<double>(k)))) {
      std::ostringstream ss;
      ss << "CommutingUnitaryPair: input is not unitary (|U^*U - I| = " << err << ")";
      throw Error(ss.str());
    }
  }
  return CommutingUnitaryPair{std::move(u1), std::move(u2)};
}

int JointSpectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& p : points) total += p.multiplicity;
  return total;
}

std::vector<std::pair<Complex, Complex>> JointSpectrum::expanded(int factor) const {
  std::vector<std::pair<Complex, Complex>> out;
  for (const auto& p : points)
    for (int r = 0; r < p.multiplicity * factor; ++r) out.emplace_back(p.first, p.second);
  return out;
}

bool same_multiset(const JointSpectrum& a, const JointSpectrum& b, double tol, int b_factor) {
  const auto xs = a.expanded();
  const auto ys = b.expanded(b_factor);
  if (xs.size() != ys.size()) return false;
  std::vector<bool> used(ys.size(), false);
  for (const auto& x : xs) {
    bool found = false;
    for (std::size_t j = 0; j < ys.size() && !found; ++j) {
      if (used[j]) continue;
      const double dist =
          std::max(std::abs(x.first - ys[j].first), std::abs(x.second - ys[j].second));
      if (dist <= tol) used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

CommutingUnitaryPair random_commuting_unitaries(Index k, std::uint64_t seed,
                                                std::vector<JointPoint>* phases) {
  if (k < 1) throw Error("random_commuting_unitaries: k must be at least 1");
  Rng rng(seed);
  const CMatrix v = random_unitary(k, rng);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  CVector d1(k), d2(k);
  for (Index i = 0; i < k; ++i) {
    d1(i) = std::polar(1.0, angle(rng));
    d2(i) = std::polar(1.0, angle(rng));
  }
  if (phases) {
    phases->clear();
    for (Index i = 0; i < k; ++i) phases->push_back({d1(i), d2(i), 1});
  }
  return CommutingUnitaryPair{v * d1.asDiagonal() * v.adjoint(),
                              v * d2.asDiagonal() * v.adjoint()};
}

std::pair<CMatrix, CMatrix> random_commuting_hermitian(Index k, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix v = random_unitary(k, rng);
  std::uniform_real_distribution<double> value(-std::numbers::pi / 2, std::numbers::pi / 2);
  CVector d1(k), d2(k);
  for (Index i = 0; i < k; ++i) {
    d1(i) = value(rng);
    d2(i) = value(rng);
  }
  const CMatrix a1 = v * d1.asDiagonal() * v.adjoint();
  const CMatrix a2 = v * d2.asDiagonal() * v.adjoint();
  return {(a1 + a1.adjoint()) / 2.0, (a2 + a2.adjoint()) / 2.0};
}

CMatrix outer_kron(const CMatrix& s, const CMatrix& inner) {
  const Index k = inner.rows();
  CMatrix out = CMatrix::Zero(s.rows() * k, s.cols() * inner.cols());
  for (Index a = 0; a < s.rows(); ++a)
    for (Index b = 0; b < s.cols(); ++b)
      if (s(a, b) != Complex(0.0)) {
        out.block(a * k, b * inner.cols(), k, inner.cols()) = s(a, b) * inner;
      }
  return out;
}

JordanPair build_jordan_pair(const CommutingUnitaryPair& base, const HatParams& params) {
  const HatParams hp = HatParams::checked(params.c, params.d);
  CMatrix s1 = CMatrix::Identity(3, 3);
  s1(0, 1) = hp.c;
  CMatrix s2 = CMatrix::Identity(3, 3);
  s2(0, 2) = hp.d;
  return JordanPair{base, hp, outer_kron(s1, base.u1), outer_kron(s2, base.u2)};
}

CMatrix jordan_closed_form(double n, double m, const HatParams& params, Index k) {
  const double nc = n * params.c;
  const double md = m * params.d;
  CMatrix s(3, 3);
  s << 1.0, nc, md, nc, nc * nc + 1.0, nc * md, md, nc * md, md * md + 1.0;
  return outer_kron(s, CMatrix::Identity(k, k));
}

QuadraticPencil jordan_pencil(const HatParams& params, Index k) {
  const CMatrix id = CMatrix::Identity(k, k);
  auto pattern = [&](Index a, Index b, double v) {
    CMatrix s = CMatrix::Zero(3, 3);
    s(a, b) = v;
    s(b, a) = v;
    return HermMatrix::symmetrized(outer_kron(s, id));
  };
  const double c = params.c;
  const double d = params.d;
  return QuadraticPencil({HermMatrix::identity(3 * k), pattern(0, 1, c), pattern(0, 2, d),
                          pattern(1, 2, c * d), pattern(1, 1, c * c), pattern(2, 2, d * d)});
}

//=========================================================================
// Hereditary pencils
//=========================================================================

HermMatrix hereditary_value(const CMatrix& t1, const CMatrix& t2, const HermMatrix& g, int n,
                            int m, double tol) {
  require_commuting(t1, t2, tol, "hereditary_value");
  if (g.dim() != t1.rows()) throw DimensionError("hereditary_value: Gram dimension mismatch");
  const CMatrix x = matrix_power(t1, n) * matrix_power(t2, m);
  return HermMatrix::symmetrized(x.adjoint() * g.matrix() * x);
}

PencilFit fit_pencil_detailed(const CMatrix& t1, const CMatrix& t2, const HermMatrix& g,
                              const std::optional<CMatrix>& embed) {
  require_commuting(t1, t2, 1e-9, "fit_pencil");
  if (g.dim() != t1.rows()) throw DimensionError("fit_pencil: Gram dimension mismatch");
  if (embed && embed->rows() != t1.rows()) {
    throw DimensionError("fit_pencil: embedding has the wrong number of rows");
  }

  // Powers T1^n T2^m for 0 <= n, m <= 3 applied to the embedding.
  std::array<CMatrix, 4> p1, p2;
  p1[0] = embed ? *embed : CMatrix::Identity(t1.rows(), t1.rows());
  for (int i = 1; i < 4; ++i) p1[i] = t1 * p1[i - 1];
  auto q = [&](int n, int m) {
    CMatrix x = p1[n];
    for (int i = 0; i < m; ++i) x = t2 * x;
    return CMatrix(x.adjoint() * g.matrix() * x);
  };

  std::array<CMatrix, 6> values;
  for (std::size_t i = 0; i < kMonomials.size(); ++i) values[i] = q(kMonomials[i].i, kMonomials[i].j);

  PencilFit fit;
  fit.candidate = interpolate_pencil(values);
  for (const auto& [n, m] : {std::pair{2, 1}, {1, 2}, {2, 2}, {3, 0}, {0, 3}}) {
    const double r = (q(n, m) - evaluate(fit.candidate, n, m).matrix()).norm();
    fit.validation_residual = std::max(fit.validation_residual, r);
  }
  return fit;
}

std::optional<QuadraticPencil> fit_pencil(const CMatrix& t1, const CMatrix& t2,
                                          const HermMatrix& g, double tol,
                                          const std::optional<CMatrix>& embed) {
  PencilFit fit = fit_pencil_detailed(t1, t2, g, embed);
  if (!(fit.validation_residual <= tol)) return std::nullopt;
  return std::move(fit.candidate);
}

//=========================================================================
// Class membership
//=========================================================================

bool ClassReport::passed() const {
  return std::all_of(relations.begin(), relations.end(),
                     [&](const RelationResidual& r) { return r.residual <= tol; });
}

double ClassReport::worst() const {
  double w = 0.0;
  for (const auto& r : relations) w = std::max(w, r.residual);
  return w;
}

ClassReport class_membership(const CMatrix& j1, const CMatrix& j2, const HatParams& params,
                             double tol) {
  if (j1.rows() != j1.cols() || j2.rows() != j1.rows() || j2.cols() != j1.cols() ||
      j1.rows() % 3 != 0) {
    throw DimensionError("class_membership: expected square inputs of dimension 3k");
  }
  const Index k = j1.rows() / 3;
  const CMatrix u1 = j1.block(0, 0, k, k);
  const CMatrix u2 = j2.block(0, 0, k, k);
  const CMatrix ik = CMatrix::Identity(k, k);
  const CMatrix i3k = CMatrix::Identity(3 * k, 3 * k);

  CMatrix s1 = CMatrix::Identity(3, 3);
  s1(0, 1) = params.c;
  CMatrix s2 = CMatrix::Identity(3, 3);
  s2(0, 2) = params.d;

  const CMatrix w1 = block_diag3(u1);
  const CMatrix w2 = block_diag3(u2);
  const CMatrix n1 = (j1 - w1) * w1.adjoint() / params.c;
  const CMatrix n2 = (j2 - w2) * w2.adjoint() / params.d;

  ClassReport report;
  report.tol = tol;
  auto add = [&](const char* name, double value) { report.relations.push_back({name, value}); };
  add("pattern J1", (j1 - outer_kron(s1, u1)).norm());
  add("pattern J2", (j2 - outer_kron(s2, u2)).norm());
  add("unitary U1", (u1.adjoint() * u1 - ik).norm());
  add("unitary U2", (u2.adjoint() * u2 - ik).norm());
  add("commute U1 U2", commutator_norm(u1, u2));
  add("commute J1 J2", commutator_norm(j1, j2));
  add("i: N1^2 = 0", (n1 * n1).norm());
  add("i: N2^2 = 0", (n2 * n2).norm());
  add("ii: W1 N1 = N1 W1", commutator_norm(w1, n1));
  add("ii: W2 N2 = N2 W2", commutator_norm(w2, n2));
  add("iii: N1 N1* = N2 N2*", (n1 * n1.adjoint() - n2 * n2.adjoint()).norm());
  add("iv: N1 N1* + N1* N1 + N2* N2 = I",
      (n1 * n1.adjoint() + n1.adjoint() * n1 + n2.adjoint() * n2 - i3k).norm());
  add("v: N1 N2 = 0", (n1 * n2).norm());
  add("v: N2 N1 = 0", (n2 * n1).norm());
  add("vi: N1 N2* = 0", (n1 * n2.adjoint()).norm());
  add("vi: N2 N1* = 0", (n2 * n1.adjoint()).norm());
  return report;
}

//=========================================================================
// Spectra
//=========================================================================

namespace {

// Swaps diagonal entries p and p+1 of the upper-triangular r, updating z.
void swap_schur(CMatrix& r, CMatrix& z, Index p) {
  const Complex a = r(p, p);
  const Complex b = r(p + 1, p + 1);
  Eigen::Vector2cd x(r(p, p + 1), b - a);  // eigenvector for b
  x /= x.norm();
  Eigen::Matrix2cd g;
  g << x(0), -std::conj(x(1)), x(1), std::conj(x(0));
  r.middleCols(p, 2) = r.middleCols(p, 2) * g;
  r.middleRows(p, 2) = g.adjoint() * r.middleRows(p, 2);
  z.middleCols(p, 2) = z.middleCols(p, 2) * g;
  r(p + 1, p) = 0.0;
}

std::optional<JointSpectrum> joint_attempt(const CMatrix& t1, const CMatrix& t2, Complex theta,
                                           double cluster_tol) {
  const Index n = t1.rows();
  Eigen::ComplexSchur<CMatrix> schur(t1 + theta * t2);
  CMatrix r = schur.matrixT();
  CMatrix z = schur.matrixU();

  double scale = 1.0;
  for (Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(r(i, i)));
  const double ct = cluster_tol * scale;

  // Single-linkage clusters of the diagonal.
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> find = [&](Index i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (std::abs(r(i, i) - r(j, j)) <= ct) parent[find(i)] = find(j);

  std::vector<Index> id(static_cast<std::size_t>(n));
  std::vector<Index> roots;
  for (Index i = 0; i < n; ++i) {
    const Index root = find(i);
    auto it = std::find(roots.begin(), roots.end(), root);
    id[i] = it - roots.begin();
    if (it == roots.end()) roots.push_back(root);
  }

  // Distinct clusters must be well separated, or theta merged joint points.
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (id[i] != id[j] && std::abs(r(i, i) - r(j, j)) <= 100.0 * ct) return std::nullopt;

  // Bubble clusters into contiguous runs.
  for (Index pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (Index p = 0; p + 1 < n; ++p) {
      if (id[p] > id[p + 1]) {
        swap_schur(r, z, p);
        std::swap(id[p], id[p + 1]);
        swapped = true;
      }
    }
    if (!swapped) break;
  }

  const CMatrix a1 = z.adjoint() * t1 * z;
  const CMatrix a2 = z.adjoint() * t2 * z;
  JointSpectrum out;
  double leak = 0.0;
  for (Index s = 0; s < n;) {
    Index e = s;
    while (e < n && id[e] == id[s]) ++e;
    const Index len = e - s;
    out.points.push_back({a1.block(s, s, len, len).trace() / static_cast<double>(len),
                          a2.block(s, s, len, len).trace() / static_cast<double>(len),
                          static_cast<int>(len)});
    if (e < n) {
      leak += a1.block(e, s, n - e, len).squaredNorm() + a2.block(e, s, n - e, len).squaredNorm();
    }
    s = e;
  }
  // Both matrices must be block upper triangular in the reordered basis.
  if (std::sqrt(leak) > 1e-6 * (1.0 + t1.norm() + t2.norm())) return std::nullopt;
  return out;
}

}  // namespace

JointSpectrum joint_eigenvalues(const CMatrix& t1, const CMatrix& t2, double tol,
                                std::uint64_t seed, double cluster_tol) {
  require_commuting(t1, t2, tol, "joint_eigenvalues");
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  constexpr int kAttempts = 8;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    const Complex theta = std::polar(1.0, angle(rng));
    if (auto spectrum = joint_attempt(t1, t2, theta, cluster_tol)) return *spectrum;
  }
  std::ostringstream ss;
  ss << "joint_eigenvalues: no separating combination found after " << kAttempts << " attempts";
  throw Error(ss.str());
}

//=========================================================================
// Functional calculus
//=========================================================================

std::pair<CMatrix, CMatrix> apply_holomorphic(const JordanPair& j, const ScalarFunction& g,
                                              const ScalarFunction& g_prime) {
  const Index k = j.k();
  for (const CMatrix* u : {&j.base.u1, &j.base.u2}) {
    const double err = (u->adjoint() * *u - CMatrix::Identity(k, k)).norm();
    if (err > 1e-8 * (1.0 + std::sqrt(static_cast<double>(k)))) {
      std::ostringstream ss;
      ss << "apply_holomorphic: base is not unitary (|U^*U - I| = " << err << ")";
      throw Error(ss.str());
    }
  }
  auto assemble = [&](const CMatrix& u, Index col, double scale) {
    const CMatrix gu = normal_function(u, g);
    const CMatrix off = scale * u * normal_function(u, g_prime);
    CMatrix out = block_diag3(gu);
    out.block(0, col * k, k, k) = off;
    return out;
  };
  return {assemble(j.base.u1, 1, j.params.c), assemble(j.base.u2, 2, j.params.d)};
}

Complex log_with_cut(Complex z, double phi) {
  return std::log(z * std::polar(1.0, -phi)) + Complex(0.0, phi);
}

double cut_rotation(const std::vector<Complex>& values) {
  if (values.empty()) return 0.0;
  std::vector<double> args;
  for (const Complex& v : values) args.push_back(std::arg(v));
  std::sort(args.begin(), args.end());
  double best_gap = args.front() + 2.0 * std::numbers::pi - args.back();
  double best_mid = args.back() + best_gap / 2.0;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const double gap = args[i] - args[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      best_mid = args[i - 1] + gap / 2.0;
    }
  }
  return best_mid - std::numbers::pi;
}

std::vector<Complex> normal_eigenvalues(const CMatrix& u) {
  Eigen::ComplexSchur<CMatrix> schur(u, false);
  std::vector<Complex> out;
  for (Index i = 0; i < u.rows(); ++i) out.push_back(schur.matrixT()(i, i));
  return out;
}

CMatrix exp_block_jordan(const CMatrix& l) {
  if (l.rows() != l.cols() || l.rows() % 3 != 0) {
    throw DimensionError("exp_block_jordan: expected a square matrix of dimension 3k");
  }
  const Index k = l.rows() / 3;
  const CMatrix a = l.block(0, 0, k, k);
  const CMatrix s = block_diag3(a);
  const CMatrix n = l - s;
  double lower = 0.0;
  for (Index r = 0; r < 3; ++r)
    for (Index c = 0; c <= r; ++c) lower = std::max(lower, n.block(r * k, c * k, k, k).norm());
  const double scale = 1.0 + l.norm();
  const double defect = std::max({lower, (n * n).norm(), commutator_norm(s, n),
                                  commutator_norm(a, a.adjoint())});
  if (defect > 1e-8 * scale) {
    std::ostringstream ss;
    ss << "exp_block_jordan: input lacks the unipotent block structure (defect " << defect << ")";
    throw Error(ss.str());
  }
  const CMatrix ea = normal_function(a, [](Complex z) { return std::exp(z); });
  return block_diag3(ea) * (CMatrix::Identity(3 * k, 3 * k) + n);
}

CMatrix exp_i_sjordan(const CMatrix& a, const CMatrix& nilpotent) {
  const auto eig = eig_hermitian(HermMatrix(a));
  CVector phases(a.rows());
  for (Index i = 0; i < a.rows(); ++i) phases(i) = std::polar(1.0, eig.eigenvalues(i));
  const CMatrix u = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
  const Index n3 = 3 * a.rows();
  return block_diag3(u) * (CMatrix::Identity(n3, n3) + Complex(0.0, 1.0) * nilpotent);
}

SJordanReport sjordan_exp_check(const CMatrix& a1, const CMatrix& a2, const HatParams& params,
                                double tol) {
  require_commuting(a1, a2, tol, "sjordan_exp_check");
  const Index k = a1.rows();
  const Complex i(0.0, 1.0);
  CMatrix m1 = CMatrix::Zero(3, 3);
  m1(0, 1) = -i * params.c;
  CMatrix m2 = CMatrix::Zero(3, 3);
  m2(0, 2) = -i * params.d;
  const CMatrix id = CMatrix::Identity(k, k);
  const CMatrix n1 = outer_kron(m1, id);
  const CMatrix n2 = outer_kron(m2, id);
  const CMatrix s1 = block_diag3(a1);
  const CMatrix s2 = block_diag3(a2);

  SJordanReport report;
  report.expansion_residual = std::max({commutator_norm(s1, n1), commutator_norm(s2, n2),
                                        (n1 * n1).norm(), (n2 * n2).norm()});
  report.exp1 = exp_i_sjordan(a1, n1);
  report.exp2 = exp_i_sjordan(a2, n2);

  const CMatrix u1 = report.exp1.block(0, 0, k, k);
  const CMatrix u2 = report.exp2.block(0, 0, k, k);
  const JordanPair expected = build_jordan_pair(CommutingUnitaryPair{u1, u2}, params);
  report.pattern_residual =
      std::max((report.exp1 - expected.j1).norm(), (report.exp2 - expected.j2).norm());
  report.membership = class_membership(report.exp1, report.exp2, params, tol);
  return report;
}

}  // namespace plift
