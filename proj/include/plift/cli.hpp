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

#include "plift/json_io.hpp"
#include "plift/pencil.hpp"

namespace plift::cli {

/// Exit codes shared by all commands.
inline constexpr int kExitPass = 0;
inline constexpr int kExitNegative = 2;
inline constexpr int kExitUndetermined = 3;
inline constexpr int kExitUsage = 64;

struct RunConfig {
  std::uint64_t seed = 0;
  /// Unset means the command's own default.
  std::optional<double> tol;
  double grid_radius = 8.0;
  int grid_steps = 33;
  int max_iter = 10000;
  std::optional<std::string> output_path;

  /// Throws FormatError unless tol > 0, grid_steps >= 1 and max_iter >= 1.
  void validate() const;
  Json to_json(double effective_tol) const;
};

struct CommandResult {
  int exit_code = kExitPass;
  Json report;
};

enum class CheckMode { Positivity, Factor, Both };

/// Positivity and/or factorization of the hat of the pencil in `pencil_file`.
/// Params come from `params` if set, else from the file.
CommandResult cmd_pencil_check(const std::string& pencil_file, const RunConfig& config,
                               CheckMode mode, const std::optional<HatParams>& params);

/// Sampled positivity and CP verdict of the Choi map. Exit 0 iff positive
/// and not CP.
CommandResult cmd_choi_demo(const RunConfig& config, int trials);

/// Builds the counterexample; writes the pencil (with params) to
/// config.output_path when set.
CommandResult cmd_counterexample(const RunConfig& config);

/// `input_file` holds a pencil or a {"pencil", "K", "dimH"} config; K and
/// dim_h, when given, override the config.
CommandResult cmd_shift_verify(const std::string& input_file, const RunConfig& config,
                               std::optional<int> K, std::optional<Index> dim_h,
                               bool perturb_cubic);

CommandResult cmd_jordan_verify(const RunConfig& config, Index k, const HatParams& params);

/// Full command line front end; prints the report to stdout.
int run(int argc, char** argv);

}  // namespace plift::cli
