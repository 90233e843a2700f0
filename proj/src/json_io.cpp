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

#include "plift/json_io.hpp"

#include <fstream>
#include <sstream>

namespace plift {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing member \"") + key + "\"");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string(what) + ": expected a number");
  return j.get<double>();
}

Index count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw FormatError(std::string(what) + ": expected a non-negative integer");
  }
  return static_cast<Index>(j.get<long long>());
}

template <typename F>
auto rethrow_as_format(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) data.push_back({m(i, k).real(), m(i, k).imag()});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const Json& j) {
  const Index rows = count(member(j, "rows"), "matrix rows");
  const Index cols = count(member(j, "cols"), "matrix cols");
  const Json& data = member(j, "data");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols) {
    std::ostringstream ss;
    ss << "matrix data: expected " << rows * cols << " entries";
    throw FormatError(ss.str());
  }
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      const Json& e = data[static_cast<std::size_t>(i * cols + k)];
      if (!e.is_array() || e.size() != 2) throw FormatError("matrix entry: expected [re, im]");
      m(i, k) = Complex(number(e[0], "matrix entry"), number(e[1], "matrix entry"));
    }
  }
  return m;
}

HermMatrix herm_from_json(const Json& j) {
  const CMatrix m = matrix_from_json(j);
  return rethrow_as_format("Hermitian matrix", [&] { return HermMatrix(m); });
}

Json to_json(const HatParams& params) { return Json{{"c", params.c}, {"d", params.d}}; }

Json to_json(const QuadraticPencil& p, const std::optional<HatParams>& params) {
  Json b = Json::object();
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    b[monomial_key(kMonomials[k])] = to_json(p.coeffs()[k].matrix());
  }
  Json out{{"dim", p.dim()}, {"monic", p.monic()}, {"B", std::move(b)}};
  if (params) out["params"] = to_json(*params);
  return out;
}

QuadraticPencil pencil_from_json(const Json& j) {
  const Index dim = count(member(j, "dim"), "pencil dim");
  const Json& b = member(j, "B");
  std::array<HermMatrix, 6> coeffs;
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    coeffs[k] = herm_from_json(member(b, monomial_key(kMonomials[k]).c_str()));
    if (coeffs[k].dim() != dim) throw FormatError("pencil coefficient dimension differs from dim");
  }
  QuadraticPencil p(std::move(coeffs));
  auto monic = j.find("monic");
  if (monic != j.end()) {
    if (!monic->is_boolean()) throw FormatError("pencil monic: expected a boolean");
    if (monic->get<bool>() && !p.monic()) {
      throw FormatError("pencil declared monic but B00 is not the identity");
    }
  }
  return p;
}

std::optional<HatParams> params_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("params")) return std::nullopt;
  const Json& p = j["params"];
  const double c = number(member(p, "c"), "params c");
  const double d = number(member(p, "d"), "params d");
  return rethrow_as_format("params", [&] { return HatParams::checked(c, d); });
}

Json to_json(const FeasibilityOutcome& outcome, bool include_gram) {
  Json out{{"kind", to_string(outcome.kind)},
           {"gap", outcome.gap},
           {"iterations", outcome.iterations}};
  if (outcome.certificate_margin) out["certificate_margin"] = *outcome.certificate_margin;
  if (include_gram && outcome.gram) out["gram"] = to_json(outcome.gram->matrix());
  return out;
}

Json to_json(const LinearMapSym3& m) {
  Json images = Json::object();
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    images[monomial_key(kMonomials[k])] = to_json(m.images[k].matrix());
  }
  return Json{{"target_dim", m.target_dim}, {"params", to_json(m.params)}, {"images", images}};
}

LinearMapSym3 map_from_json(const Json& j) {
  LinearMapSym3 m;
  m.target_dim = count(member(j, "target_dim"), "map target_dim");
  const auto params = params_from_json(j);
  if (!params) throw FormatError("missing member \"params\"");
  m.params = *params;
  const Json& images = member(j, "images");
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    m.images[k] = herm_from_json(member(images, monomial_key(kMonomials[k]).c_str()));
    if (m.images[k].dim() != m.target_dim) throw FormatError("map image dimension differs");
  }
  return m;
}

Json to_json(const JordanPair& jp) {
  return Json{{"k", jp.k()},
              {"params", to_json(jp.params)},
              {"U1", to_json(jp.base.u1)},
              {"U2", to_json(jp.base.u2)}};
}

JordanPair jordan_pair_from_json(const Json& j) {
  const Index k = count(member(j, "k"), "Jordan k");
  const auto params = params_from_json(j);
  if (!params) throw FormatError("missing member \"params\"");
  CMatrix u1 = matrix_from_json(member(j, "U1"));
  CMatrix u2 = matrix_from_json(member(j, "U2"));
  if (u1.rows() != k || u2.rows() != k) throw FormatError("Jordan unitaries must be k x k");
  return rethrow_as_format("Jordan pair", [&] {
    return build_jordan_pair(CommutingUnitaryPair::checked(std::move(u1), std::move(u2)), *params);
  });
}

Json to_json(const ClassReport& report) {
  Json out = Json::array();
  for (const auto& r : report.relations) {
    out.push_back({{"relation", r.relation}, {"residual", r.residual}});
  }
  return out;
}

Json to_json(const ShiftReport& report) {
  Json out = Json::array();
  for (const auto& e : report.entries) {
    Json site = e.site ? Json::array({e.site->first, e.site->second}) : Json(nullptr);
    out.push_back({{"site", std::move(site)}, {"check", e.check}, {"residual", e.residual}});
  }
  return out;
}

ShiftConfig shift_config_from_json(const Json& j) {
  ShiftConfig cfg;
  cfg.pencil = pencil_from_json(member(j, "pencil"));
  cfg.K = static_cast<int>(count(member(j, "K"), "K"));
  cfg.dim_h = count(member(j, "dimH"), "dimH");
  if (cfg.dim_h != cfg.pencil.dim()) throw FormatError("dimH differs from the pencil dimension");
  return cfg;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw Error("write failed for " + path);
}

}  // namespace plift
