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

#include <optional>
#include <string>

#include <json.hpp>

#include "plift/cpmaps.hpp"
#include "plift/feasibility.hpp"
#include "plift/jordan.hpp"
#include "plift/matrix_core.hpp"
#include "plift/pencil.hpp"
#include "plift/shiftspace.hpp"

namespace plift {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or inconsistent serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
Json to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);
HermMatrix herm_from_json(const Json& j);

/// {"dim", "monic", "B": {"00": M, ...}} plus "params" when given.
Json to_json(const QuadraticPencil& p, const std::optional<HatParams>& params = std::nullopt);
QuadraticPencil pencil_from_json(const Json& j);
/// The optional "params" member of a pencil document.
std::optional<HatParams> params_from_json(const Json& j);
Json to_json(const HatParams& params);

/// {"kind", "gap", "iterations"} plus "gram" if requested and present.
Json to_json(const FeasibilityOutcome& outcome, bool include_gram = false);

/// {"target_dim", "params", "images": {"00": M, ...}}.
Json to_json(const LinearMapSym3& m);
LinearMapSym3 map_from_json(const Json& j);

/// {"k", "params", "U1", "U2"}.
Json to_json(const JordanPair& jp);
JordanPair jordan_pair_from_json(const Json& j);

/// [{"relation", "residual"}, ...]
Json to_json(const ClassReport& report);
/// [{"site": [j, k] or null, "check", "residual"}, ...]
Json to_json(const ShiftReport& report);

struct ShiftConfig {
  QuadraticPencil pencil;
  int K = 0;
  Index dim_h = 0;
};

/// {"pencil": <pencil>, "K": K, "dimH": n}.
ShiftConfig shift_config_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace plift
