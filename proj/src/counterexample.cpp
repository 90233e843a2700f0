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

#include "plift/counterexample.hpp"

#include <algorithm>
#include <cmath>

#include "plift/cpmaps.hpp"

namespace plift {

bool Counterexample::all_infeasible() const {
  return !spot_checks.empty() &&
         std::all_of(spot_checks.begin(), spot_checks.end(), [](const SpotCheck& s) {
           return s.outcome.kind == FeasibilityKind::Infeasible;
         });
}

Counterexample build_counterexample(const CounterexampleOptions& options) {
  const SymBasis basis = SymBasis::make(HatParams{1.0, 1.0});
  const LinearMapSym3 phi = choi_map();
  const QuadraticPencil raw = pencil_from_map(phi, basis);

  Counterexample out;
  out.choi_min_eigenvalue = psd_check(choi_matrix(phi, basis).value, options.tol).min_eigenvalue;
  if (!(out.choi_min_eigenvalue < 0.0)) {
    throw Error("build_counterexample: symmetrized Choi matrix is not indefinite");
  }
  // Half the negative margin keeps the shifted Choi matrix indefinite.
  out.epsilon = std::abs(out.choi_min_eigenvalue) / 2.0;
  out.pencil = monicize(raw, out.epsilon, options.tol);

  // The raw pencil is pointwise PSD because the map is positive, so the
  // monic pencil dominates epsilon (B00 + epsilon I)^{-1}.
  const HermMatrix shifted = raw.coeff(0, 0) + HermMatrix::identity(raw.dim()) * out.epsilon;
  out.certified_delta = out.epsilon / eig_hermitian(shifted).eigenvalues(raw.dim() - 1);
  out.grid_delta = grid_min_eigenvalue(out.pencil, options.grid_radius, options.grid_steps);
  out.delta = std::min(out.grid_delta, out.certified_delta);

  const auto params = suggest_cd_for_delta(out.pencil, out.delta, options.tol);
  if (!params) throw Error("build_counterexample: no admissible (c, d) found");
  out.params = *params;

  const double c0 = out.params.c;
  for (const HatParams& hp :
       {HatParams{c0, c0}, HatParams{2.0 * c0, 2.0 * c0}, HatParams{1.5 * c0, 3.0 * c0}}) {
    out.spot_checks.push_back({hp, factor_feasibility(hat(out.pencil, hp), options.feasibility)});
  }
  return out;
}

}  // namespace plift
