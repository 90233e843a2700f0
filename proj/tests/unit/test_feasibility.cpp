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
#include "plift/cpmaps.hpp"
#include "plift/feasibility.hpp"
#include "plift/random.hpp"

namespace plift {
namespace {

HermMatrix scalar(double x) { return HermMatrix(CMatrix::Constant(1, 1, x)); }

// Distance of the Hermitian parts of the blocks of g from the constraints.
double constraint_residual(const HermMatrix& g, const QuadraticPencil& p) {
  return (project_affine(g, p).matrix() - g.matrix()).norm();
}

TEST(AffineProjection, IdempotentAndKeepsSkewParts) {
  Rng rng(1);
  const Index n = 2;
  const FactorTriple f{random_complex_matrix(3, n, rng), random_complex_matrix(3, n, rng),
                       random_complex_matrix(3, n, rng)};
  const QuadraticPencil p = QuadraticPencil::from_factors(f);
  const CMatrix a = random_complex_matrix(3 * n, 3 * n, rng);
  const HermMatrix g = HermMatrix::symmetrized(a + a.adjoint());
  const HermMatrix once = project_affine(g, p);
  EXPECT_LE((project_affine(once, p).matrix() - once.matrix()).norm(), 1e-12);

  const CMatrix g01 = g.matrix().block(0, n, n, n);
  const CMatrix p01 = once.matrix().block(0, n, n, n);
  EXPECT_LE(((g01 - g01.adjoint()) - (p01 - p01.adjoint())).norm(), 1e-12);
  EXPECT_LE(((p01 + p01.adjoint()) - p.coeff(1, 0).matrix()).norm(), 1e-12);
  EXPECT_LE((once.matrix().block(n, n, n, n) - p.coeff(2, 0).matrix()).norm(), 1e-12);

  EXPECT_LE(constraint_residual(affine_center(p), p), 1e-12);
}

TEST(FactorFeasibility, ScalarCompletedSquare) {
  // (1 + alpha)^2 + beta^2
  const QuadraticPencil p({scalar(1), scalar(2), scalar(0), scalar(0), scalar(1), scalar(1)});
  const FeasibilityOutcome out = factor_feasibility(p);
  ASSERT_EQ(out.kind, FeasibilityKind::Feasible);
  ASSERT_TRUE(out.gram);
  EXPECT_NE(psd_check(*out.gram, 1e-9).kind, PsdKind::Indefinite);
  EXPECT_LE(constraint_residual(*out.gram, p), 1e-9);
  EXPECT_TRUE(verify_factorization(p, gram_to_factors(*out.gram), 1e-7));
}

TEST(FactorFeasibility, RandomTriplesAreFeasible) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 1 + trial % 4;
    const Index target = 3 * n + trial % 3;
    const FactorTriple f{random_complex_matrix(target, n, rng), random_complex_matrix(target, n, rng),
                         random_complex_matrix(target, n, rng)};
    const QuadraticPencil p = QuadraticPencil::from_factors(f);
    const FeasibilityOutcome out = factor_feasibility(p);
    ASSERT_EQ(out.kind, FeasibilityKind::Feasible) << "trial " << trial << " gap " << out.gap;
    EXPECT_LE(out.gap, 1e-10);
    EXPECT_TRUE(verify_factorization(p, gram_to_factors(*out.gram), 1e-7));
  }
}

// Target dimension 1 or n: the hat is singular somewhere (square factors
// have a determinant with real zeros), so no definite Gram matrix exists.
TEST(FactorFeasibility, LowRankTriplesAreFeasible) {
  Rng rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    const Index n = 2 + trial % 3;
    const Index target = trial < 3 ? 1 : n;
    const FactorTriple f{random_complex_matrix(target, n, rng),
                         random_complex_matrix(target, n, rng),
                         random_complex_matrix(target, n, rng)};
    const QuadraticPencil p = QuadraticPencil::from_factors(f);
    FeasibilityOptions options;
    options.max_iter = 2000;
    const FeasibilityOutcome out = factor_feasibility(p, options);
    ASSERT_EQ(out.kind, FeasibilityKind::Feasible) << "trial " << trial << " gap " << out.gap;
    EXPECT_LE(constraint_residual(*out.gram, p), 1e-10);
    EXPECT_NE(psd_check(*out.gram, 1e-9).kind, PsdKind::Indefinite);
    EXPECT_TRUE(verify_factorization(p, gram_to_factors(*out.gram), 1e-7));
  }
}

TEST(FactorFeasibility, ChoiPencilIsInfeasible) {
  const LinearMapSym3 m = choi_map();
  const QuadraticPencil p = pencil_from_map(m, SymBasis::make(m.params));
  const FeasibilityOutcome out = factor_feasibility(p);
  ASSERT_EQ(out.kind, FeasibilityKind::Infeasible);
  EXPECT_NEAR(out.gap, fixtures::kChoiPencilGap, 1e-6);
  ASSERT_TRUE(out.certificate_margin);
  EXPECT_GT(*out.certificate_margin, 0.0);
  EXPECT_FALSE(out.gram);
}

TEST(FactorFeasibility, NegativeConstantIsInfeasible) {
  const QuadraticPencil p({scalar(-1), scalar(0), scalar(0), scalar(0), scalar(1), scalar(1)});
  const FeasibilityOutcome out = factor_feasibility(p);
  EXPECT_EQ(out.kind, FeasibilityKind::Infeasible);
  EXPECT_GT(out.gap, 1e-6);
}

TEST(FactorFeasibility, IterationBudgetGivesUndetermined) {
  const LinearMapSym3 m = choi_map();
  const QuadraticPencil p = pencil_from_map(m, SymBasis::make(m.params));
  const FeasibilityOutcome out = factor_feasibility(p, 3, 1e-10, 1e-6);
  EXPECT_EQ(out.kind, FeasibilityKind::Undetermined);
  EXPECT_EQ(out.iterations, 3);
}

TEST(GramToFactors, IdentityAndRank) {
  const FactorTriple f = gram_to_factors(HermMatrix::identity(6));
  EXPECT_EQ(f.target_dim(), 6);
  EXPECT_EQ(f.source_dim(), 2);
  EXPECT_LE((f.v1.adjoint() * f.v1 - CMatrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LE((f.v0.adjoint() * f.v1).norm(), 1e-12);

  Rng rng(3);
  const CMatrix y = random_complex_matrix(2, 9, rng);
  const FactorTriple g = gram_to_factors(HermMatrix::symmetrized(y.adjoint() * y));
  EXPECT_EQ(g.target_dim(), 2);

  EXPECT_THROW(gram_to_factors(HermMatrix::identity(5)), DimensionError);
  EXPECT_THROW(gram_to_factors(HermMatrix::identity(3) * -1.0), NotPositiveError);
}

}  // namespace
}  // namespace plift
