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

#include "plift/json_io.hpp"
#include "plift/random.hpp"

namespace plift {
namespace {

TEST(JsonIo, MatrixRoundTripIsRowMajor) {
  CMatrix m(2, 3);
  m << 1, Complex(0, 2), 3, 4, 5, Complex(-6, 0.5);
  const Json j = to_json(m);
  EXPECT_EQ(j["data"][1][1].get<double>(), 2.0);
  EXPECT_EQ(j["data"][5][1].get<double>(), 0.5);
  EXPECT_EQ(matrix_from_json(j), m);
}

TEST(JsonIo, MatrixErrors) {
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 2, "cols": 2, "data": []})")),
               FormatError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "data": [[1]]})")),
               FormatError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": -1, "cols": 1, "data": []})")),
               FormatError);
  EXPECT_THROW(herm_from_json(Json::parse(R"({"rows": 1, "cols": 2, "data": [[1,0],[2,0]]})")),
               FormatError);
}

TEST(JsonIo, PencilRoundTrip) {
  Rng rng(1);
  const FactorTriple f{random_complex_matrix(3, 2, rng), random_complex_matrix(3, 2, rng),
                       random_complex_matrix(3, 2, rng)};
  const QuadraticPencil p = QuadraticPencil::from_factors(f);
  const Json j = to_json(p, HatParams{2.0, 0.5});
  const Json reparsed = Json::parse(j.dump());
  const QuadraticPencil q = pencil_from_json(reparsed);
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ((q.coeffs()[k].matrix() - p.coeffs()[k].matrix()).norm(), 0.0);
  }
  const auto params = params_from_json(reparsed);
  ASSERT_TRUE(params);
  EXPECT_EQ(params->c, 2.0);
  EXPECT_EQ(params->d, 0.5);
}

TEST(JsonIo, PencilRejectsFalseMonicAndMissingKeys) {
  const HermMatrix i = HermMatrix::identity(2);
  Json j = to_json(QuadraticPencil({i * 2.0, i, i, i, i, i}));
  j["monic"] = true;
  EXPECT_THROW(pencil_from_json(j), FormatError);
  j["monic"] = false;
  j["B"].erase("11");
  EXPECT_THROW(pencil_from_json(j), FormatError);
  Json bad = to_json(QuadraticPencil({i, i, i, i, i, i}));
  bad["params"] = {{"c", -1.0}, {"d", 1.0}};
  EXPECT_THROW(params_from_json(bad), FormatError);
}

TEST(JsonIo, MapAndJordanRoundTrip) {
  const LinearMapSym3 m = rebased(choi_map(), HatParams{1.5, 3.0});
  const LinearMapSym3 back = map_from_json(Json::parse(to_json(m).dump()));
  EXPECT_EQ(back.target_dim, 3);
  EXPECT_EQ(back.params.d, 3.0);
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ((back.images[k].matrix() - m.images[k].matrix()).norm(), 0.0);
  }

  const JordanPair jp = build_jordan_pair(random_commuting_unitaries(3, 2), HatParams{1.0, 2.0});
  const JordanPair jb = jordan_pair_from_json(Json::parse(to_json(jp).dump()));
  EXPECT_EQ((jb.j1 - jp.j1).norm(), 0.0);
  EXPECT_EQ((jb.j2 - jp.j2).norm(), 0.0);
}

TEST(JsonIo, ShiftConfig) {
  const HermMatrix i = HermMatrix::identity(2);
  const HermMatrix z = HermMatrix::zero(2);
  Json j{{"pencil", to_json(QuadraticPencil({i, z, z, z, z, z}))}, {"K", 4}, {"dimH", 2}};
  const ShiftConfig cfg = shift_config_from_json(j);
  EXPECT_EQ(cfg.K, 4);
  EXPECT_EQ(cfg.dim_h, 2);
  j["dimH"] = 3;
  EXPECT_THROW(shift_config_from_json(j), FormatError);
}

TEST(JsonIo, ReportsSerialize) {
  ClassReport cr;
  cr.relations = {{"pattern J1", 1e-15}};
  EXPECT_EQ(to_json(cr)[0]["relation"], "pattern J1");
  ShiftReport sr;
  sr.entries = {{Site{1, -2}, "matrix T", 0.5}, {std::nullopt, "embedding isometry", 0.0}};
  const Json js = to_json(sr);
  EXPECT_EQ(js[0]["site"][1].get<int>(), -2);
  EXPECT_TRUE(js[1]["site"].is_null());
  FeasibilityOutcome out;
  out.kind = FeasibilityKind::Feasible;
  out.gram = HermMatrix::identity(3);
  EXPECT_FALSE(to_json(out).contains("gram"));
  EXPECT_TRUE(to_json(out, true).contains("gram"));
}

TEST(JsonIo, FileErrors) {
  EXPECT_THROW(read_json_file("/nonexistent/pencil.json"), FormatError);
}

}  // namespace
}  // namespace plift
