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

#include "plift/counterexample.hpp"
#include "plift/jordan.hpp"
#include "plift/random.hpp"
#include "plift/shiftspace.hpp"

namespace plift {
namespace {

QuadraticPencil identity_pencil(Index n) {
  const HermMatrix i = HermMatrix::identity(n);
  const HermMatrix z = HermMatrix::zero(n);
  return QuadraticPencil({i, z, z, z, z, z});
}

HermMatrix scalar(double x) { return HermMatrix(CMatrix::Constant(1, 1, x)); }

const Counterexample& counterexample() {
  static const Counterexample ce = build_counterexample();
  return ce;
}

TEST(ShiftSpaceBuild, IdentityPencil) {
  const ShiftSpace sp = ShiftSpace::build(identity_pencil(2), 3);
  EXPECT_EQ(sp.site_count(), 49u);
  EXPECT_EQ(sp.total_dim(), 98);
  EXPECT_LE((sp.gram_dense().matrix() - CMatrix::Identity(98, 98)).norm(), 0.0);

  // T is the plain truncated shift
  const CMatrix t = sp.shift_dense(Shift::T);
  const std::size_t from = sp.site_index({0, 1});
  const std::size_t to = sp.site_index({1, 1});
  EXPECT_EQ(t(2 * to, 2 * from), Complex(1.0));
  EXPECT_EQ(t.col(2 * sp.site_index({3, 0})).norm(), 0.0);
}

TEST(ShiftSpaceBuild, LatticeOrderIsRowMajor) {
  const ShiftSpace sp = ShiftSpace::build(identity_pencil(1), 2);
  EXPECT_EQ(sp.site_index({-2, -2}), 0u);
  EXPECT_EQ(sp.site_index({-2, -1}), 1u);
  EXPECT_EQ(sp.site_index({-1, -2}), 5u);
  EXPECT_EQ(sp.site_at(12), Site(0, 0));
  EXPECT_THROW(sp.site_index({3, 0}), Error);
}

TEST(ShiftSpaceBuild, ScalarBlocks) {
  // 1 + (j^2 + k^2) / 100
  const QuadraticPencil p({scalar(1), scalar(0), scalar(0), scalar(0), scalar(0.01), scalar(0.01)});
  const ShiftSpace sp = ShiftSpace::build(p, 4);
  for (int j = -4; j <= 4; ++j)
    for (int k = -4; k <= 4; ++k)
      EXPECT_NEAR(sp.block({j, k})(0, 0).real(), 1 + (j * j + k * k) / 100.0, 1e-15);
}

TEST(ShiftSpaceBuild, CounterexampleBlocksArePositiveDefinite) {
  const ShiftSpace sp = ShiftSpace::build(counterexample().pencil, 6);
  EXPECT_EQ(sp.site_count(), 169u);
  for (std::size_t i = 0; i < sp.site_count(); ++i) {
    EXPECT_EQ(psd_check(sp.block(sp.site_at(i))).kind, PsdKind::PositiveDefinite);
  }
}

TEST(ShiftSpaceBuild, IndefiniteBlockNamesSite) {
  // 1 - j^2 / 4 fails first at j = -K
  const QuadraticPencil p({scalar(1), scalar(0), scalar(0), scalar(0), scalar(-0.25), scalar(0)});
  try {
    ShiftSpace::build(p, 4);
    FAIL() << "expected BlockNotPositiveError";
  } catch (const BlockNotPositiveError& e) {
    EXPECT_EQ(e.site(), Site(-4, -4));
    EXPECT_LT(e.min_eigenvalue(), 0.0);
  }
}

TEST(ApplyShift, RelabelsAndCommutes) {
  const ShiftSpace sp = ShiftSpace::build(identity_pencil(2), 4);
  CVector h(2);
  h << 1.0, Complex(0, 2);
  const LatticeVector t = apply_shift(sp, delta_vector({0, 0}, h), Shift::T, 1);
  ASSERT_EQ(t.coefficients.size(), 1u);
  EXPECT_EQ(t.coefficients.begin()->first, Site(1, 0));

  Rng rng(1);
  LatticeVector x;
  for (int j = -2; j <= 1; ++j) x.coefficients[{j, j / 2}] = random_complex_matrix(2, 1, rng).col(0);
  const LatticeVector ts = apply_shift(sp, apply_shift(sp, x, Shift::S, 1), Shift::T, 1);
  const LatticeVector st = apply_shift(sp, apply_shift(sp, x, Shift::T, 1), Shift::S, 1);
  EXPECT_EQ(ts.coefficients.size(), st.coefficients.size());
  for (const auto& [s, v] : ts.coefficients) EXPECT_EQ((v - st.coefficients.at(s)).norm(), 0.0);
}

TEST(ApplyShift, OverflowNamesSite) {
  const ShiftSpace sp = ShiftSpace::build(identity_pencil(1), 4);
  const CVector h = CVector::Ones(1);
  try {
    apply_shift(sp, delta_vector({2, 0}, h), Shift::T, 3);
    FAIL() << "expected an overflow error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("(2,0)"), std::string::npos) << e.what();
  }
}

TEST(LatticeInner, GramPairingCommutes) {
  const ShiftSpace sp = ShiftSpace::build(counterexample().pencil, 5);
  Rng rng(2);
  LatticeVector x, y;
  for (int j = -2; j <= 2; ++j) {
    x.coefficients[{j, -j}] = random_complex_matrix(3, 1, rng).col(0);
    y.coefficients[{j + 1, 1 - j}] = random_complex_matrix(3, 1, rng).col(0);
  }
  const Complex a = lattice_inner(sp, apply_shift(sp, apply_shift(sp, x, Shift::S, 1), Shift::T, 1), y);
  const Complex b = lattice_inner(sp, apply_shift(sp, apply_shift(sp, x, Shift::T, 1), Shift::S, 1), y);
  EXPECT_EQ(a, b);
}

TEST(HereditaryLattice, MatchesEvaluate) {
  const QuadraticPencil& p = counterexample().pencil;
  const ShiftSpace sp = ShiftSpace::build(p, 6);
  const auto v21 = hereditary_value_lattice(sp, 2, 1, 0);
  EXPECT_LE((v21.at({0, 0}).matrix() - evaluate(p, 2, 1).matrix()).norm(), 1e-12);
  EXPECT_LE((v21.at({-1, 2}).matrix() - evaluate(p, 1, 3).matrix()).norm(), 1e-12);
  for (int n = 0; n <= 2; ++n) {
    for (int m = 0; m <= 2; ++m) {
      for (const auto& [s, v] : hereditary_value_lattice(sp, n, m, 0)) {
        EXPECT_LE((v.matrix() - evaluate(p, s.first + n, s.second + m).matrix()).norm(), 1e-12);
      }
    }
  }
  const ShiftSpace id = ShiftSpace::build(identity_pencil(2), 4);
  for (const auto& [s, v] : hereditary_value_lattice(id, 2, 2, 1)) {
    EXPECT_LE((v.matrix() - CMatrix::Identity(2, 2)).norm(), 0.0);
  }
  EXPECT_THROW(hereditary_value_lattice(id, 3, 0, 2), Error);
}

TEST(HereditaryLattice, MonotoneInTruncation) {
  const QuadraticPencil& p = counterexample().pencil;
  const auto small = hereditary_value_lattice(ShiftSpace::build(p, 4), 1, 2, 0);
  const auto large = hereditary_value_lattice(ShiftSpace::build(p, 6), 1, 2, 0);
  for (const auto& [s, v] : small) EXPECT_LE((v.matrix() - large.at(s).matrix()).norm(), 1e-12);
}

TEST(Verify3Isometry, IdentityAndCounterexample) {
  const ShiftReport id = verify_3isometry(ShiftSpace::build(identity_pencil(1), 4), 1e-12);
  EXPECT_TRUE(id.passed());
  EXPECT_EQ(id.worst(), 0.0);

  const ShiftReport r = verify_3isometry(ShiftSpace::build(counterexample().pencil, 6), 1e-8);
  EXPECT_TRUE(r.passed()) << r.worst();
  EXPECT_LE(r.worst("matrix"), 1e-8);
  EXPECT_FALSE(r.entries.empty());
}

TEST(Verify3Isometry, CubicPerturbationFails) {
  const ShiftSpace sp = perturb_cubic(ShiftSpace::build(identity_pencil(1), 5), 1e-3);
  const ShiftReport r = verify_3isometry(sp, 1e-8);
  EXPECT_FALSE(r.passed());
  EXPECT_NEAR(r.worst("third difference T"), 6e-3, 1e-12);
  EXPECT_LE(r.worst("third difference S"), 1e-12);
  EXPECT_THROW(verify_3isometry(ShiftSpace::build(identity_pencil(1), 3), 1e-8), Error);
}

TEST(PencilTransfer, IdentityAndRandomFactorable) {
  const QuadraticPencil i1 = identity_pencil(2);
  const FactorTriple trivial{CMatrix::Identity(2, 2), CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
  // B20 = B02 = 0 so the hat is the pencil itself for any params
  const ShiftReport r0 = verify_pencil_transfer(ShiftSpace::build(i1, 4), trivial, {}, 1e-12);
  EXPECT_TRUE(r0.passed()) << r0.worst();

  Rng rng(3);
  for (int t = 0; t < 3; ++t) {
    const HatParams params{1.5 + t, 2.0};
    const FactorTriple f{random_complex_matrix(4, 2, rng), random_complex_matrix(4, 2, rng),
                         random_complex_matrix(4, 2, rng)};
    const auto [p, g] = monic_from_hat_factors(f, params);
    const ShiftReport r = verify_pencil_transfer(ShiftSpace::build(p, 4), g, params, 1e-8);
    EXPECT_TRUE(r.passed()) << r.worst();
    EXPECT_LE(r.worst("embedding isometry"), 1e-12);
  }
}

TEST(PencilTransfer, RejectsNonFactor) {
  const QuadraticPencil& p = counterexample().pencil;
  const FactorTriple junk{CMatrix::Identity(3, 3), CMatrix::Zero(3, 3), CMatrix::Zero(3, 3)};
  EXPECT_THROW(
      verify_pencil_transfer(ShiftSpace::build(p, 4), junk, counterexample().params, 1e-8), Error);
}

TEST(InteriorCompression, FitRecoversTranslatedPencil) {
  const QuadraticPencil& p = counterexample().pencil;
  const ShiftSpace sp = ShiftSpace::build(p, 5);
  const CMatrix t = sp.shift_dense(Shift::T);
  const CMatrix s = sp.shift_dense(Shift::S);
  const HermMatrix g = sp.gram_dense();
  const CMatrix embed = sp.interior_embedding(3);
  const auto fit = fit_pencil(t, s, g, 1e-8, embed);
  ASSERT_TRUE(fit);
  const Index n = p.dim();
  const Index sites = embed.cols() / n;
  ASSERT_EQ(sites, 25);
  for (Index b = 0; b < sites; ++b) {
    EXPECT_LE((fit->coeff(2, 0).matrix().block(b * n, b * n, n, n) - p.coeff(2, 0).matrix()).norm(),
              1e-9);
    EXPECT_LE((fit->coeff(1, 1).matrix().block(b * n, b * n, n, n) - p.coeff(1, 1).matrix()).norm(),
              1e-9);
  }
  EXPECT_FALSE(fit_pencil(2.0 * t, s, g, 1e-8, embed));
}

TEST(DenseCap, Enforced) {
  const ShiftSpace sp = ShiftSpace::build(identity_pencil(3), 6);
  EXPECT_THROW(sp.gram_dense(100), Error);
  EXPECT_THROW(sp.shift_dense(Shift::S, 100), Error);
}

}  // namespace
}  // namespace plift
