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

#include "plift/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "plift/counterexample.hpp"
#include "plift/cpmaps.hpp"
#include "plift/feasibility.hpp"
#include "plift/jordan.hpp"
#include "plift/positivity.hpp"
#include "plift/shiftspace.hpp"

namespace plift::cli {

namespace {

// Unexpected library failure (not a mathematical outcome, not bad input).
constexpr int kExitSoftware = 70;

constexpr double kShiftDefaultTol = 1e-8;
constexpr double kCubicKappa = 1e-6;
constexpr double kSpectrumTol = 1e-8;
constexpr Index kJordanMaxK = 256;
constexpr int kChoiLowTrials = 1000;

Json base_report(const char* command, const RunConfig& config, double tol) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"config", config.to_json(tol)}};
}

CommandResult usage_error(Json report, const std::string& message) {
  report["error"] = message;
  report["exit_code"] = kExitUsage;
  return {kExitUsage, std::move(report)};
}

CommandResult finish(Json report, int code) {
  report["exit_code"] = code;
  return {code, std::move(report)};
}

FeasibilityOptions feasibility_options(const RunConfig& config) {
  FeasibilityOptions f;
  f.max_iter = config.max_iter;
  return f;
}

int feasibility_exit(FeasibilityKind kind) {
  switch (kind) {
    case FeasibilityKind::Feasible:
      return kExitPass;
    case FeasibilityKind::Infeasible:
      return kExitNegative;
    case FeasibilityKind::Undetermined:
      break;
  }
  return kExitUndetermined;
}

double max_coeff_diff(const QuadraticPencil& a, const QuadraticPencil& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < kMonomials.size(); ++k) {
    worst = std::max(worst, (a.coeffs()[k].matrix() - b.coeffs()[k].matrix()).norm());
  }
  return worst;
}

Json check_entry(const std::string& name, double residual, double tol) {
  return Json{{"check", name}, {"residual", residual}, {"tol", tol}, {"passed", residual <= tol}};
}

}  // namespace

void RunConfig::validate() const {
  if (tol && !(*tol > 0.0)) throw FormatError("--tol must be positive");
  if (grid_steps < 1) throw FormatError("--grid-steps must be at least 1");
  if (!(grid_radius >= 0.0)) throw FormatError("--grid-radius must be non-negative");
  if (max_iter < 1) throw FormatError("--max-iter must be at least 1");
}

Json RunConfig::to_json(double effective_tol) const {
  return Json{{"seed", seed},
              {"tol", effective_tol},
              {"grid_radius", grid_radius},
              {"grid_steps", grid_steps},
              {"max_iter", max_iter},
              {"output_path", output_path ? Json(*output_path) : Json(nullptr)}};
}

//-------------------------------------------------------------------------
// pencil-check
//-------------------------------------------------------------------------

CommandResult cmd_pencil_check(const std::string& pencil_file, const RunConfig& config,
                               CheckMode mode, const std::optional<HatParams>& params) {
  const double tol = config.tol.value_or(kDefaultTol);
  Json report = base_report("pencil-check", config, tol);
  report["input"] = pencil_file;
  try {
    config.validate();
    const Json doc = read_json_file(pencil_file);
    const QuadraticPencil p = pencil_from_json(doc);
    const std::optional<HatParams> hp = params ? params : params_from_json(doc);
    if (!hp) return usage_error(std::move(report), "no params: pass -c and -d or add \"params\"");

    report["mode"] = mode == CheckMode::Positivity ? "positivity"
                     : mode == CheckMode::Factor   ? "factor"
                                                   : "both";
    report["params"] = to_json(*hp);
    report["dim"] = p.dim();
    const QuadraticPencil h = hat(p, *hp);

    if (mode == CheckMode::Factor) {
      const FeasibilityOutcome out = factor_feasibility(h, feasibility_options(config));
      report["feasibility"] = to_json(out);
      return finish(std::move(report), feasibility_exit(out.kind));
    }

    PositivityOptions opts;
    opts.grid_radius = config.grid_radius;
    opts.grid_steps = config.grid_steps;
    opts.seed = config.seed;
    opts.tol = tol;
    opts.feasibility = feasibility_options(config);
    const PositivityVerdict v = positivity_check(h, opts);

    Json pos{{"kind", to_string(v.kind)}, {"grid_min_eigenvalue", v.grid_min_eigenvalue}};
    if (v.witness) {
      pos["witness"] = {{"alpha", v.witness->alpha},
                        {"beta", v.witness->beta},
                        {"value", v.witness->value}};
    }
    report["positivity"] = std::move(pos);
    if (v.feasibility) report["feasibility"] = to_json(*v.feasibility);

    int code = kExitUndetermined;
    if (v.kind == PositivityKind::CertifiedPositive) {
      code = kExitPass;
    } else if (v.kind == PositivityKind::NotPositive) {
      code = kExitNegative;
    } else if (mode == CheckMode::Both && v.feasibility &&
               v.feasibility->kind == FeasibilityKind::Infeasible) {
      // positive on the samples but provably without a factorization
      code = kExitNegative;
    }
    return finish(std::move(report), code);
  } catch (const FormatError& e) {
    return usage_error(std::move(report), e.what());
  }
}

//-------------------------------------------------------------------------
// choi-demo
//-------------------------------------------------------------------------

CommandResult cmd_choi_demo(const RunConfig& config, int trials) {
  const double tol = config.tol.value_or(1e-9);
  Json report = base_report("choi-demo", config, tol);
  try {
    config.validate();
  } catch (const FormatError& e) {
    return usage_error(std::move(report), e.what());
  }
  if (trials < 1) return usage_error(std::move(report), "--trials must be at least 1");

  const LinearMapSym3 m = choi_map();
  const SymBasis basis = SymBasis::make(m.params);

  const PositivitySample sample = is_positive_sampled(m, basis, trials, config.seed, tol);
  Json pos{{"trials", sample.trials},
           {"positive", sample.positive},
           {"worst_min_eigenvalue", sample.worst_min_eigenvalue},
           {"worst_input", to_json(sample.worst_input)}};
  if (trials < kChoiLowTrials) {
    pos["note"] = "fewer than 1000 trials: the positivity verdict rests on a thin sample";
  }
  report["positivity"] = std::move(pos);

  const ChoiMatrix choi = choi_matrix(m, basis);
  const EigenDecomposition eig = eig_hermitian(choi.value);
  report["choi_eigenvalues"] = std::vector<double>(eig.eigenvalues.begin(), eig.eigenvalues.end());

  const CpVerdict cp = is_cp(m, basis, kDefaultTol, feasibility_options(config));
  Json cpj{{"kind", to_string(cp.kind)},
           {"symmetrized_choi_min_eigenvalue", cp.symmetrized_choi.min_eigenvalue}};
  if (cp.feasibility) cpj["feasibility"] = to_json(*cp.feasibility);
  report["cp"] = std::move(cpj);

  int code = kExitPass;
  if (!sample.positive || cp.kind == CpKind::CP) {
    code = kExitNegative;
  } else if (cp.kind == CpKind::Unknown) {
    code = kExitUndetermined;
  }
  return finish(std::move(report), code);
}

//-------------------------------------------------------------------------
// counterexample
//-------------------------------------------------------------------------

CommandResult cmd_counterexample(const RunConfig& config) {
  const double tol = config.tol.value_or(kDefaultTol);
  Json report = base_report("counterexample", config, tol);
  try {
    config.validate();
  } catch (const FormatError& e) {
    return usage_error(std::move(report), e.what());
  }

  CounterexampleOptions opts;
  opts.tol = tol;
  opts.grid_radius = config.grid_radius;
  opts.grid_steps = config.grid_steps;
  opts.feasibility = feasibility_options(config);
  const Counterexample ce = build_counterexample(opts);

  report["params"] = to_json(ce.params);
  report["choi_min_eigenvalue"] = ce.choi_min_eigenvalue;
  report["epsilon"] = ce.epsilon;
  report["grid_delta"] = ce.grid_delta;
  report["certified_delta"] = ce.certified_delta;
  report["delta"] = ce.delta;
  Json spots = Json::array();
  for (const SpotCheck& s : ce.spot_checks) {
    spots.push_back({{"params", to_json(s.params)}, {"feasibility", to_json(s.outcome)}});
  }
  report["spot_checks"] = std::move(spots);

  if (config.output_path) {
    Json doc = to_json(ce.pencil, ce.params);
    doc["schema_version"] = kSchemaVersion;
    write_json_file(*config.output_path, doc);
  } else {
    report["pencil"] = to_json(ce.pencil, ce.params);
  }
  return finish(std::move(report), ce.all_infeasible() ? kExitPass : kExitUndetermined);
}

//-------------------------------------------------------------------------
// shift-verify
//-------------------------------------------------------------------------

CommandResult cmd_shift_verify(const std::string& input_file, const RunConfig& config,
                               std::optional<int> K, std::optional<Index> dim_h,
                               bool perturb) {
  const double tol = config.tol.value_or(kShiftDefaultTol);
  Json report = base_report("shift-verify", config, tol);
  report["input"] = input_file;
  report["perturb_cubic"] = perturb;

  std::optional<ShiftSpace> sp;
  try {
    config.validate();
    const Json doc = read_json_file(input_file);
    std::optional<QuadraticPencil> p;
    if (doc.is_object() && doc.contains("pencil")) {
      ShiftConfig sc = shift_config_from_json(doc);
      p = std::move(sc.pencil);
      if (!K) K = sc.K;
      if (!dim_h) dim_h = sc.dim_h;
    } else {
      p = pencil_from_json(doc);
    }
    if (!K) return usage_error(std::move(report), "-K is required for a bare pencil file");
    if (dim_h && *dim_h != p->dim()) {
      return usage_error(std::move(report), "--dim-h differs from the pencil dimension");
    }
    if (*K < 4) return usage_error(std::move(report), "-K must be at least 4");
    const Index side = 2 * static_cast<Index>(*K) + 1;
    if (p->dim() * side * side > kDenseCap) {
      std::ostringstream ss;
      ss << "dimH (2K + 1)^2 = " << p->dim() * side * side << " exceeds the cap " << kDenseCap;
      return usage_error(std::move(report), ss.str());
    }
    report["K"] = *K;
    report["dimH"] = p->dim();

    try {
      sp = ShiftSpace::build(*p, *K);
    } catch (const BlockNotPositiveError& e) {
      report["error"] = e.what();
      report["site"] = {e.site().first, e.site().second};
      report["min_eigenvalue"] = e.min_eigenvalue();
      return finish(std::move(report), kExitNegative);
    }
  } catch (const FormatError& e) {
    return usage_error(std::move(report), e.what());
  }

  if (perturb) sp = perturb_cubic(*sp, kCubicKappa);

  const ShiftReport iso = verify_3isometry(*sp, tol);
  report["three_isometry"] = to_json(iso);
  report["three_isometry_worst"] = iso.worst();

  Json hered = Json::array();
  double hered_worst = 0.0;
  for (int n = 0; n <= 2; ++n) {
    for (int m = 0; m <= 2; ++m) {
      double worst = 0.0;
      for (const auto& [site, value] : hereditary_value_lattice(*sp, n, m, 0)) {
        const HermMatrix expect = evaluate(sp->pencil(), site.first + n, site.second + m);
        worst = std::max(worst, (value.matrix() - expect.matrix()).norm());
      }
      hered.push_back({{"n", n}, {"m", m}, {"residual", worst}});
      hered_worst = std::max(hered_worst, worst);
    }
  }
  report["hereditary"] = std::move(hered);
  report["hereditary_worst"] = hered_worst;

  const bool ok = iso.passed() && hered_worst <= tol;
  return finish(std::move(report), ok ? kExitPass : kExitNegative);
}

//-------------------------------------------------------------------------
// jordan-verify
//-------------------------------------------------------------------------

CommandResult cmd_jordan_verify(const RunConfig& config, Index k, const HatParams& params) {
  const double tol = config.tol.value_or(kDefaultTol);
  Json report = base_report("jordan-verify", config, tol);
  try {
    config.validate();
    HatParams::checked(params.c, params.d);
  } catch (const Error& e) {
    return usage_error(std::move(report), e.what());
  }
  if (k < 1 || k > kJordanMaxK) {
    return usage_error(std::move(report), "k must lie in [1, 256]");
  }
  report["k"] = k;
  report["params"] = to_json(params);

  const CommutingUnitaryPair base = random_commuting_unitaries(k, config.seed);
  const JordanPair jp = build_jordan_pair(base, params);
  const HermMatrix g = HermMatrix::identity(3 * k);
  Json checks = Json::array();
  bool ok = true;
  auto record = [&](const std::string& name, double residual, double limit) {
    checks.push_back(check_entry(name, residual, limit));
    ok = ok && residual <= limit;
  };

  double closed = 0.0;
  for (int n = 0; n <= 5; ++n) {
    for (int m = 0; m <= 5; ++m) {
      const HermMatrix hv = hereditary_value(jp.j1, jp.j2, g, n, m);
      closed = std::max(closed, (hv.matrix() - jordan_closed_form(n, m, params, k)).norm());
    }
  }
  record("closed form", closed, tol);

  const ClassReport membership = class_membership(jp.j1, jp.j2, params, tol);
  report["class_membership"] = to_json(membership);
  record("class membership", membership.worst(), tol);

  const PencilFit fit = fit_pencil_detailed(jp.j1, jp.j2, g);
  record("pencil fit validation", fit.validation_residual, tol);
  record("pencil fit vs closed form", max_coeff_diff(fit.candidate, jordan_pencil(params, k)),
         tol);

  const JointSpectrum spec_j = joint_eigenvalues(jp.j1, jp.j2, 1e-9, config.seed);
  const JointSpectrum spec_u = joint_eigenvalues(base.u1, base.u2, 1e-9, config.seed);
  const bool tripled = same_multiset(spec_j, spec_u, kSpectrumTol, 3);
  report["joint_spectrum"] = {{"points_J", spec_j.points.size()},
                              {"points_U", spec_u.points.size()},
                              {"tripled", tripled}};
  ok = ok && tripled;

  std::vector<Complex> eigs = normal_eigenvalues(base.u1);
  for (const Complex z : normal_eigenvalues(base.u2)) eigs.push_back(z);
  const double phi = cut_rotation(eigs);
  double cut_distance = M_PI;
  for (const Complex z : eigs) {
    const double off = std::remainder(std::arg(z) - (phi + M_PI), 2.0 * M_PI);
    cut_distance = std::min(cut_distance, std::abs(off));
  }
  const auto [l1, l2] = apply_holomorphic(
      jp, [phi](Complex z) { return log_with_cut(z, phi); },
      [](Complex z) { return 1.0 / z; });
  const double round_trip = std::max((exp_block_jordan(l1) - jp.j1).norm(),
                                     (exp_block_jordan(l2) - jp.j2).norm());
  report["log_cut"] = {{"phi", phi}, {"angular_distance", cut_distance}};
  record("exp log round trip", round_trip, tol);

  report["checks"] = std::move(checks);
  return finish(std::move(report), ok ? kExitPass : kExitNegative);
}

//-------------------------------------------------------------------------
// front end
//-------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"Quadratic pencils, Choi maps, Jordan pairs and weighted shifts"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  double tol = 0.0;
  std::string out_path;
  app.add_option("--tol", tol, "Numerical tolerance (command default when omitted)");
  app.add_option("--seed", config.seed, "Master RNG seed");
  app.add_option("--grid-radius", config.grid_radius, "Half-width of the positivity grid");
  app.add_option("--grid-steps", config.grid_steps, "Grid points per axis");
  app.add_option("--max-iter", config.max_iter, "Feasibility iteration cap");
  app.add_option("--out", out_path, "Output path");

  std::string file;
  std::string mode_name = "both";
  double c = 1.0;
  double d = 1.0;
  int trials = 10000;
  int K = 0;
  Index dim_h = 0;
  long long k = 8;
  bool perturb = false;

  auto* pencil_check = app.add_subcommand("pencil-check", "Positivity and factorization of a hat");
  pencil_check->add_option("file", file, "Pencil JSON")->required();
  pencil_check->add_option("--mode", mode_name, "positivity, factor or both")
      ->check(CLI::IsMember({"positivity", "factor", "both"}));
  auto* pc_c = pencil_check->add_option("-c", c, "Hat parameter c");
  auto* pc_d = pencil_check->add_option("-d", d, "Hat parameter d");

  auto* choi_demo = app.add_subcommand("choi-demo", "Positive but not completely positive");
  choi_demo->add_option("--trials", trials, "Sampled PSD inputs");

  auto* counterexample = app.add_subcommand("counterexample", "Build the non-factoring pencil");

  auto* shift_verify = app.add_subcommand("shift-verify", "Three-isometry checks on a lattice");
  shift_verify->add_option("file", file, "Pencil or shift config JSON")->required();
  auto* sv_k = shift_verify->add_option("-K", K, "Lattice half-width");
  auto* sv_dim = shift_verify->add_option("--dim-h", dim_h, "Expected pencil dimension");
  shift_verify->add_flag("--perturb-cubic", perturb, "Inject a cubic term into the Gram blocks");

  auto* jordan_verify = app.add_subcommand("jordan-verify", "Jordan-pair model checks");
  jordan_verify->add_option("-k", k, "Size of the commuting unitaries");
  jordan_verify->add_option("-c", c, "Parameter c");
  jordan_verify->add_option("-d", d, "Parameter d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  if (app.count("--tol")) config.tol = tol;
  if (app.count("--out")) config.output_path = out_path;

  CommandResult result;
  try {
    if (pencil_check->parsed()) {
      if (pc_c->count() != pc_d->count()) {
        std::cerr << "error: -c and -d go together\n";
        return kExitUsage;
      }
      std::optional<HatParams> params;
      if (pc_c->count()) {
        try {
          params = HatParams::checked(c, d);
        } catch (const Error& e) {
          std::cerr << "error: " << e.what() << "\n";
          return kExitUsage;
        }
      }
      const CheckMode mode = mode_name == "positivity" ? CheckMode::Positivity
                             : mode_name == "factor"   ? CheckMode::Factor
                                                       : CheckMode::Both;
      result = cmd_pencil_check(file, config, mode, params);
    } else if (choi_demo->parsed()) {
      result = cmd_choi_demo(config, trials);
    } else if (counterexample->parsed()) {
      result = cmd_counterexample(config);
    } else if (shift_verify->parsed()) {
      result = cmd_shift_verify(file, config, sv_k->count() ? std::optional<int>(K) : std::nullopt,
                                sv_dim->count() ? std::optional<Index>(dim_h) : std::nullopt,
                                perturb);
    } else if (jordan_verify->parsed()) {
      result = cmd_jordan_verify(config, static_cast<Index>(k), HatParams{c, d});
    }
    // counterexample uses --out for the pencil itself
    if (config.output_path && !counterexample->parsed() && result.exit_code != kExitUsage) {
      write_json_file(*config.output_path, result.report);
    }
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSoftware;
  }

  std::cout << result.report.dump(2) << "\n";
  if (result.report.contains("error")) {
    std::cerr << "error: " << result.report["error"].get<std::string>() << "\n";
  }
  return result.exit_code;
}

}  // namespace plift::cli
