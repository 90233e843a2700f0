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

#include <gtest/gtest.h>

#include "fixtures/oracle_fixtures.hpp"
#include "plift/counterexample.hpp"
#include "plift/positivity.hpp"
#include "plift/random.hpp"

namespace plift {
namespace {

const Counterexample& counterexample() {
  static const Counterexample ce = build_counterexample();
  return ce;
}

TEST(Counterexample, MonicDimThreeAndOracleValues) {
  const Counterexample& ce = counterexample();
  EXPECT_TRUE(ce.pencil.monic());
  EXPECT_EQ(ce.pencil.dim(), 3);
  EXPECT_NEAR(ce.choi_min_eigenvalue, fixtures::kChoiSymMinEigenvalue, 1e-12);
  EXPECT_NEAR(ce.epsilon, fixtures::kCounterexampleEpsilon, 1e-12);
  EXPECT_NEAR(ce.grid_delta, fixtures::kCounterexampleDeltaGrid, 1e-9);
  EXPECT_NEAR(ce.delta, fixtures::kCounterexampleDelta, 1e-9);
  EXPECT_NEAR(ce.params.c, fixtures::kCounterexampleC0, 1e-6);
  EXPECT_EQ(ce.params.c, ce.params.d);
}

TEST(Counterexample, ParamsAreAdmissible) {
  const Counterexample& ce = counterexample();
  for (const SpotCheck& s : ce.spot_checks) {
    const HermMatrix slack =
        HermMatrix::identity(3) * ce.delta - hat_correction(ce.pencil, s.params);
    EXPECT_NE(psd_check(slack, 1e-10).kind, PsdKind::Indefinite);
  }
}

TEST(Counterexample, SpotChecksAreInfeasibleWithPinnedGaps) {
  const Counterexample& ce = counterexample();
  ASSERT_EQ(ce.spot_checks.size(), 3u);
  EXPECT_TRUE(ce.all_infeasible());
  const double pinned[] = {fixtures::kCounterexampleGapC0, fixtures::kCounterexampleGap2C0,
                           fixtures::kCounterexampleGapAsym};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(ce.spot_checks[i].outcome.kind, FeasibilityKind::Infeasible);
    EXPECT_NEAR(ce.spot_checks[i].outcome.gap, pinned[i], 0.2 * pinned[i]);
  }
}

TEST(Counterexample, HatIsNotNotPositive) {
  const Counterexample& ce = counterexample();
  const PositivityVerdict v = positivity_check(hat(ce.pencil, ce.params));
  EXPECT_NE(v.kind, PositivityKind::NotPositive);
  EXPECT_GT(v.grid_min_eigenvalue, 0.0);
}

TEST(Counterexample, StillInfeasibleAfterSubtractingSmallGamma) {
  const Counterexample& ce = counterexample();
  Rng rng(5);
  for (int t = 0; t < 3; ++t) {
    const CMatrix a = random_complex_matrix(3, 3, rng);
    HermMatrix gamma = HermMatrix::symmetrized(a.adjoint() * a);
    gamma = gamma * (ce.delta / eig_hermitian(gamma).eigenvalues(2));
    const QuadraticPencil h = hat(ce.pencil, ce.params);
    const QuadraticPencil q = h.with_coeff(0, 0, h.coeff(0, 0) - gamma);
    EXPECT_EQ(factor_feasibility(q).kind, FeasibilityKind::Infeasible);
  }
}

TEST(Counterexample, Deterministic) {
  const Counterexample again = build_counterexample();
  const Counterexample& ce = counterexample();
  EXPECT_EQ(again.params.c, ce.params.c);
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ((again.pencil.coeffs()[k].matrix() - ce.pencil.coeffs()[k].matrix()).norm(), 0.0);
  }
}

}  // namespace
}  // namespace plift
