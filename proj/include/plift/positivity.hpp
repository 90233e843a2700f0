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

#include <cstdint>
#include <optional>
#include <string>

#include "plift/feasibility.hpp"
#include "plift/pencil.hpp"

namespace plift {

enum class PositivityKind { CertifiedPositive, NotPositive, SampledPositive };

std::string to_string(PositivityKind kind);

/// <Q(alpha, beta) x, x> = value < 0.
struct PositivityWitness {
  double alpha = 0.0;
  double beta = 0.0;
  CVector x;
  double value = 0.0;
};

struct PositivityOptions {
  double grid_radius = 8.0;
  int grid_steps = 33;
  int n_directions = 64;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  FeasibilityOptions feasibility;
};

struct PositivityVerdict {
  PositivityKind kind = PositivityKind::SampledPositive;
  std::optional<PositivityWitness> witness;
  /// Present whenever the grid and direction tests passed.
  std::optional<FeasibilityOutcome> feasibility;
  double grid_min_eigenvalue = 0.0;
};

/// Grid points and random directions look for a negative value; a Feasible
/// factorization upgrades the verdict to CertifiedPositive.
PositivityVerdict positivity_check(const QuadraticPencil& p, const PositivityOptions& options = {});

}  // namespace plift
