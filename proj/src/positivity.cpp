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

#include "plift/positivity.hpp"

#include <vector>

#include "plift/parallel.hpp"
#include "plift/random.hpp"

namespace plift {

std::string to_string(PositivityKind kind) {
  switch (kind) {
    case PositivityKind::CertifiedPositive: return "CertifiedPositive";
    case PositivityKind::NotPositive: return "NotPositive";
    case PositivityKind::SampledPositive: return "SampledPositive";
  }
  return "?";
}

PositivityVerdict positivity_check(const QuadraticPencil& p, const PositivityOptions& options) {
  if (options.grid_steps < 1 || options.n_directions < 1) {
    throw Error("positivity_check: grid_steps and n_directions must be at least 1");
  }
  PositivityVerdict verdict;
  const auto pts = grid_points(options.grid_radius, options.grid_steps);
  const std::size_t m = pts.size();

  // Grid sweep: points are independent; the reported witness is the most
  // negative point, first in row-major order on ties, so it does not depend
  // on scheduling.
  std::vector<PsdVerdict> grid(m * m);
  parallel_for(m * m, [&](std::size_t idx) {
    grid[idx] = psd_check(evaluate(p, pts[idx / m], pts[idx % m]), options.tol);
  });
  std::size_t worst = 0;
  for (std::size_t idx = 1; idx < grid.size(); ++idx) {
    if (grid[idx].min_eigenvalue < grid[worst].min_eigenvalue) worst = idx;
  }
  verdict.grid_min_eigenvalue = grid[worst].min_eigenvalue;
  if (grid[worst].kind == PsdKind::Indefinite) {
    PositivityWitness w;
    w.alpha = pts[worst / m];
    w.beta = pts[worst % m];
    w.x = *grid[worst].witness;
    w.value = w.x.dot(evaluate(p, w.alpha, w.beta).matrix() * w.x).real();
    verdict.kind = PositivityKind::NotPositive;
    verdict.witness = std::move(w);
    return verdict;
  }

  // Direction sweep: exact nonnegativity of each scalar form.
  Rng rng(options.seed);
  for (int k = 0; k < options.n_directions; ++k) {
    const CVector x = random_unit_vector(p.dim(), rng);
    const ScalarQuadratic q = directional_quadratic(p, x);
    if (scalar_quadratic_nonneg(q.a, q.b1, q.b2, q.p, q.r, q.s, options.tol)) continue;
    const auto point = scalar_quadratic_witness(q, options.tol);
    if (!point) continue;
    PositivityWitness w;
    w.alpha = point->first;
    w.beta = point->second;
    w.x = x;
    w.value = x.dot(evaluate(p, w.alpha, w.beta).matrix() * x).real();
    verdict.kind = PositivityKind::NotPositive;
    verdict.witness = std::move(w);
    return verdict;
  }

  verdict.feasibility = factor_feasibility(p, options.feasibility);
  verdict.kind = verdict.feasibility->kind == FeasibilityKind::Feasible
                     ? PositivityKind::CertifiedPositive
                     : PositivityKind::SampledPositive;
  return verdict;
}

}  // namespace plift
