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

#include <vector>

#include "plift/feasibility.hpp"
#include "plift/pencil.hpp"

namespace plift {

struct CounterexampleOptions {
  double tol = kDefaultTol;
  double grid_radius = 8.0;
  int grid_steps = 33;
  FeasibilityOptions feasibility;
};

struct SpotCheck {
  HatParams params;
  FeasibilityOutcome outcome;
};

struct Counterexample {
  /// Monic, dimension 3.
  QuadraticPencil pencil;
  /// Smallest admissible c0 = d0.
  HatParams params;
  /// Smallest eigenvalue of the symmetrized Choi matrix of the Choi map.
  double choi_min_eigenvalue = 0.0;
  double epsilon = 0.0;
  double grid_delta = 0.0;
  /// epsilon / lambda_max(B00 + epsilon I): a lower bound for the monic pencil
  /// on all of R^2, not just the grid.
  double certified_delta = 0.0;
  /// min(grid_delta, certified_delta); every params with
  /// (1/c^2) B20 + (1/d^2) B02 <= delta I is admissible.
  double delta = 0.0;
  /// Feasibility of the hat at (c0, c0), (2 c0, 2 c0) and (1.5 c0, 3 c0).
  std::vector<SpotCheck> spot_checks;

  bool all_infeasible() const;
};

/// Choi-map pencil, shifted by epsilon = |lambda_min(symmetrized Choi)| / 2,
/// monicized, with (c0, d0) from suggest_cd_for_delta.
Counterexample build_counterexample(const CounterexampleOptions& options = {});

}  // namespace plift
