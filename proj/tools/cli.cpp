#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "rosc/analysis.hpp"
#include "rosc/cases.hpp"
#include "rosc/dynamics.hpp"
#include "rosc/observables.hpp"
#include "rosc/symbolic.hpp"

namespace rosc::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

struct ConfigError : Error {
  using Error::Error;
};

struct CommonOptions {
  std::vector<int> ratios;
  std::vector<double> strengths;
  double omega0 = 1.0;

  SystemParams make_params() const {
    std::vector<double> k = strengths;
    if (k.empty()) k.assign(ratios.size(), 0.0);
    try {
      return SystemParams(omega0, ratios, std::move(k));
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
};

void add_common(CLI::App* cmd, CommonOptions& common, bool strengths_too = true) {
  cmd->add_option("--ratios", common.ratios, "frequency multipliers n_1,..,n_n")
      ->required()
      ->delimiter(',');
  if (strengths_too) {
    cmd->add_option("--strengths", common.strengths, "centrifugal strengths k_1,..,k_n (default 0)")
        ->delimiter(',');
    cmd->add_option("--omega", common.omega0, "base frequency omega0 (default 1)");
  }
}

json params_json(const SystemParams& params) {
  return json{{"omega0", params.omega0}, {"ratios", params.ratios}, {"strengths", params.strengths}};
}

struct CheckRow {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string details;
};

void append_report(std::vector<CheckRow>& rows, const symbolic::Report& report) {
  for (const auto& check : report.checks) {
    rows.push_back({check.name, check.passed, check.passed ? 0.0 : 1.0, check.residual});
  }
}

json checks_json(const std::vector<CheckRow>& rows) {
  json checks = json::array();
  for (const auto& row : rows) {
    checks.push_back(json{{"name", row.name},
                          {"status", row.passed ? "pass" : "fail"},
                          {"residual", row.residual},
                          {"details", row.details}});
  }
  return checks;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file: " + path);
  file << text;
}

double divides_residual(double period, double t) {
  const double m = std::round(period / t);
  if (m < 1.0) return 1.0;
  return std::abs(period - m * t) / period;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
  CommonOptions common;
  bool all = false;
  bool symbolic_only = false;
  bool numeric_only = false;
  std::string case_name;
  int samples = 100;
  std::uint64_t seed = 0;
  int degree_limit = symbolic::kDefaultDegreeLimit;
  std::vector<double> x0;
  std::vector<double> p0;
  double t_end = 0.0;  // 0 -> 10 pi / omega0
  double tolerance = 1e-12;
  std::string out_path;
};

PhaseState default_state(const SystemParams& params, std::vector<double> x0, std::vector<double> p0) {
  const int n = params.dof();
  if (x0.empty()) x0.assign(n, 1.0);
  if (p0.empty()) {
    // staggered momenta keep the relative phases of the M_i generic; with
    // p_i = 0 in two coordinates the coupling constant M_ij starts (and
    // stays) purely real and its zero component carries only noise
    p0.assign(n, 0.0);
    for (int i = 0; i < n; ++i) p0[i] = n == 1 ? 0.5 : 0.5 * i / (n - 1);
  }
  if (static_cast<int>(x0.size()) != n || static_cast<int>(p0.size()) != n) {
    throw ConfigError("--x and --p must list one value per degree of freedom");
  }
  return PhaseState(std::move(x0), std::move(p0));
}

void run_symbolic_checks(const VerifyOptions& opts, const SystemParams& params,
                         std::vector<CheckRow>& rows) {
  append_report(rows, symbolic::verify_constancy(params.ratios, opts.degree_limit));
  append_report(rows, symbolic::verify_evolution(params.ratios, opts.degree_limit));
  append_report(rows, symbolic::verify_moduli(params.ratios, opts.degree_limit));

  // the deformation profiles that close the factorization, checked exactly
  {
    const PhasePoly x = PhasePoly::position(1, 0);
    const PhasePoly k = PhasePoly::strength(1, 0);
    symbolic::DeformationSpec step2;
    step2.condition = symbolic::DeformationCondition::Step2Ode;
    step2.candidate = k * pow(x, -2);
    symbolic::Report deformation;
    deformation.add("deformation:step2:inverse_square", symbolic::deformation_residual(step2)[0]);

    symbolic::DeformationSpec system;
    system.condition = symbolic::DeformationCondition::Section33System;
    system.candidate = k * pow(x, -2);
    system.partner = Rational(1, 2) * (k * pow(x, -2));
    const auto residuals = symbolic::deformation_residual(system);
    deformation.add("deformation:profile_system:first", residuals[0]);
    deformation.add("deformation:profile_system:second", residuals[1]);
    append_report(rows, deformation);
  }

  // momentum-degree bookkeeping for every coupled pair
  const symbolic::Constants constants = symbolic::build_constants(params.ratios, opts.degree_limit);
  for (int i = 0; i < params.dof(); ++i) {
    for (int j = i + 1; j < params.dof(); ++j) {
      const int expected_k = params.ratios[i] + params.ratios[j] - 1;
      const int expected_m = 2 * (params.ratios[i] + params.ratios[j]) - 1;
      const int got_k = momentum_degree(constants.kij(i, j).im);
      const int got_m = momentum_degree(constants.mij(i, j).im);
      const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
      rows.push_back({"degree:imK" + ij, got_k == expected_k,
                      static_cast<double>(std::abs(got_k - expected_k)),
                      "got " + std::to_string(got_k) + ", expected " + std::to_string(expected_k)});
      rows.push_back({"degree:imM" + ij, got_m == expected_m,
                      static_cast<double>(std::abs(got_m - expected_m)),
                      "got " + std::to_string(got_m) + ", expected " + std::to_string(expected_m)});
    }
  }

  // printed-case identities when the ratios have a registry entry
  std::optional<CaseId> case_id = case_for_ratios(params.ratios);
  if (!opts.case_name.empty()) {
    const auto requested = parse_case_id(opts.case_name);
    if (!requested) throw ConfigError("unknown case id: " + opts.case_name);
    if (!case_id || *case_id != *requested) {
      throw ConfigError("ratios do not match case " + opts.case_name);
    }
  }
  if (case_id) {
    append_report(rows, symbolic::match_paper_case(*case_id));
  }
}

void run_numeric_checks(const VerifyOptions& opts, const SystemParams& params,
                        std::vector<CheckRow>& rows) {
  for (double k : params.strengths) {
    if (k < 0.0) {
      throw ConfigError("numeric checks integrate trajectories and require k_i >= 0");
    }
  }

  analysis::SamplingSpec sampling;
  sampling.count = opts.samples;
  sampling.seed = opts.seed;
  const auto states = analysis::sample_regular_states(params, sampling);

  // moduli identity at sampled points
  for (int i = 0; i < params.dof(); ++i) {
    double worst = 0.0;
    for (const auto& state : states) {
      const double m2 = deformed_factor(params, state, i).modulus2();
      const double e = energy(params, state, i);
      const double expected = 4.0 * (e * e - params.strengths[i] * params.ratios[i] *
                                                 params.ratios[i] * params.omega0 * params.omega0);
      worst = std::max(worst, std::abs(m2 - expected) /
                                  std::max({1.0, std::abs(m2), std::abs(expected)}));
    }
    rows.push_back({"numeric:moduli:M" + std::to_string(i + 1), worst < 1e-12, worst,
                    "max relative residual over " + std::to_string(states.size()) + " points"});
  }

  // coupling brackets (two degrees of freedom)
  if (params.dof() == 2) {
    analysis::GradientEngine engine(params, opts.degree_limit);
    double worst_im = 0.0, worst_re = 0.0, worst_j3 = 0.0;
    for (const auto& state : states) {
      const auto residuals = analysis::prop2_check(engine, state);
      worst_im = std::max(worst_im, residuals.im_bracket);
      worst_re = std::max(worst_re, residuals.re_bracket);
      worst_j3 = std::max(worst_j3, residuals.j3_bracket);
    }
    rows.push_back({"numeric:coupling:im_bracket", worst_im < 1e-9, worst_im, ""});
    rows.push_back({"numeric:coupling:re_bracket", worst_re < 1e-9, worst_re, ""});
    rows.push_back({"numeric:coupling:j3_bracket", worst_j3 < 1e-9, worst_j3, ""});
  }

  // conservation drift along a trajectory
  const PhaseState initial = default_state(params, opts.x0, opts.p0);
  const double t_end = opts.t_end > 0.0 ? opts.t_end : 10.0 * std::numbers::pi / params.omega0;
  dynamics::IntegrateOptions int_options;
  int_options.tolerance = opts.tolerance;
  const dynamics::Trajectory trajectory = dynamics::integrate(params, initial, t_end, int_options);
  const auto drift = dynamics::drift_report(trajectory, dynamics::standard_observables(params));
  for (const auto& entry : drift.entries) {
    // normalized by the observable's own scale, so large invariants that
    // start at a zero of one component are not judged on absolute roundoff
    rows.push_back({"numeric:drift:" + entry.name, entry.scaled_dev() < 1e-8, entry.scaled_dev(),
                    "scale-relative drift over t_end = " + std::to_string(t_end)});
  }

  // orbit closure: every bounded orbit closes at (a divisor of) the common
  // period, pi/omega0 with all barriers on, 2 pi/omega0 otherwise
  const auto closure = dynamics::closure_time(params, initial);
  const bool all_positive =
      std::all_of(params.strengths.begin(), params.strengths.end(), [](double k) { return k > 0.0; });
  const double period = (all_positive ? std::numbers::pi : 2.0 * std::numbers::pi) / params.omega0;
  if (!closure) {
    rows.push_back({"numeric:closure", false, 1.0, "no return within the search horizon"});
  } else {
    const double residual = divides_residual(period, *closure);
    rows.push_back({"numeric:closure", residual < 1e-5, residual,
                    "t = " + std::to_string(*closure) + ", common period " + std::to_string(period)});
  }
}

int run_verify(VerifyOptions opts, std::ostream& out, std::ostream& err) {
  const SystemParams params = opts.common.make_params();
  if (opts.samples < 1) throw ConfigError("--samples must be at least 1");

  const bool explicit_group = opts.symbolic_only || opts.numeric_only || !opts.case_name.empty();
  const bool do_symbolic = opts.all || opts.symbolic_only || !opts.case_name.empty() || !explicit_group;
  const bool do_numeric = opts.all || opts.numeric_only || !explicit_group;

  std::vector<CheckRow> rows;
  try {
    if (do_symbolic) run_symbolic_checks(opts, params, rows);
    if (do_numeric) run_numeric_checks(opts, params, rows);
  } catch (const DegreeLimitError& e) {
    throw ConfigError(std::string(e.what()) + " (raise --degree-limit)");
  }

  json report;
  report["params"] = params_json(params);
  report["seed"] = opts.seed;
  report["checks"] = checks_json(rows);
  write_output(opts.out_path, report.dump(2) + "\n", out);

  const bool all_passed =
      std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
  if (!all_passed) {
    err << "verify: " << std::count_if(rows.begin(), rows.end(),
                                       [](const CheckRow& r) { return !r.passed; })
        << " check(s) failed\n";
  }
  return all_passed ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// trajectory
// ---------------------------------------------------------------------------

struct TrajectoryOptions {
  CommonOptions common;
  std::vector<double> x0;
  std::vector<double> p0;
  double t_end = 0.0;
  double tolerance = 1e-12;
  double stride = 0.0;
  std::string out_path;
};

int run_trajectory(TrajectoryOptions opts, std::ostream& out, std::ostream& err) {
  const SystemParams params = opts.common.make_params();
  if (!(opts.t_end > 0.0)) throw ConfigError("--t-end must be positive");
  if (static_cast<int>(opts.x0.size()) != params.dof() ||
      static_cast<int>(opts.p0.size()) != params.dof()) {
    throw ConfigError("--x and --p must list one value per degree of freedom");
  }
  for (int i = 0; i < params.dof(); ++i) {
    if (params.strengths[i] != 0.0 && opts.x0[i] == 0.0) {
      throw ConfigError("initial state is singular: x_" + std::to_string(i + 1) +
                        " = 0 with nonzero strength");
    }
    if (params.strengths[i] < 0.0) {
      throw ConfigError("trajectory integration requires k_i >= 0");
    }
  }

  dynamics::IntegrateOptions int_options;
  int_options.tolerance = opts.tolerance;
  int_options.output_stride = opts.stride;
  dynamics::Trajectory trajectory;
  try {
    trajectory =
        dynamics::integrate(params, PhaseState(opts.x0, opts.p0), opts.t_end, int_options);
  } catch (const Error& e) {
    err << "trajectory: integration failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }

  std::ostringstream csv;
  dynamics::write_trajectory_csv(csv, trajectory);
  write_output(opts.out_path, csv.str(), out);

  const auto drift = dynamics::drift_report(trajectory, dynamics::standard_observables(params));
  json summary;
  summary["t_end"] = opts.t_end;
  summary["samples"] = trajectory.size();
  json per_observable = json::object();
  for (const auto& entry : drift.entries) per_observable[entry.name] = entry.max_rel_dev;
  summary["max_rel_dev"] = per_observable;
  summary["worst"] = drift.worst_rel();
  out << summary.dump() << "\n";
  return kExitPass;
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

struct ExpandOptions {
  std::vector<int> ratios;
  bool check_paper = false;
  int degree_limit = symbolic::kDefaultDegreeLimit;
  std::string out_path;
};

int run_expand(ExpandOptions opts, std::ostream& out, std::ostream& err) {
  if (opts.ratios.size() != 2) throw ConfigError("expand needs exactly two ratios");
  for (int n : opts.ratios) {
    if (n < 1) throw ConfigError("frequency ratios must be positive integers");
  }

  std::ostringstream text;
  bool checks_passed = true;
  try {
    const auto constants = symbolic::build_constants(opts.ratios, opts.degree_limit);
    const auto general = symbolic::general_j3(opts.ratios[0], opts.ratios[1], opts.degree_limit);
    text << "ratios: " << opts.ratios[0] << ":" << opts.ratios[1] << "\n";
    text << "lambda = " << to_string(general.lambda) << "\n";
    text << "I3 = " << to_string(general.i3) << "\n";
    text << "J3 = " << to_string(general.j3) << "\n";
    text << "Re(M12) = " << to_string(constants.mij(0, 1).re) << "\n";
    text << "Im(M12) = " << to_string(constants.mij(0, 1).im) << "\n";

    if (opts.check_paper) {
      const auto case_id = case_for_ratios(opts.ratios);
      if (!case_id) {
        text << "no printed closed form for these ratios; skipping the printed-case check\n";
      } else {
        const auto report = symbolic::match_paper_case(*case_id);
        for (const auto& check : report.checks) {
          text << "check " << check.name << ": " << (check.passed ? "pass" : "fail") << "\n";
          if (!check.passed) {
            checks_passed = false;
            text << "  residual: " << check.residual << "\n";
          }
        }
      }
    }
  } catch (const DegreeLimitError& e) {
    err << "expand: " << e.what() << " (raise --degree-limit)\n";
    return kExitCheckFailed;
  }

  write_output(opts.out_path, text.str(), out);
  return checks_passed ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// independence
// ---------------------------------------------------------------------------

struct IndependenceOptions {
  CommonOptions common;
  int samples = 100;
  std::uint64_t seed = 0;
  double threshold = 1e-8;
  bool fradkin = false;
  std::string out_path;
};

json rank_json(const analysis::RankReport& report, const std::vector<ObservableRef>& observables) {
  json observable_names = json::array();
  for (const auto& obs : observables) observable_names.push_back(obs.name());
  json points = json::array();
  for (const auto& point : report.points) {
    points.push_back(json{{"x", point.state.positions},
                          {"p", point.state.momenta},
                          {"rank", point.rank},
                          {"singular_values", point.singular_values}});
  }
  return json{{"observables", observable_names},
              {"rows", report.rows},
              {"columns", report.columns},
              {"threshold", report.threshold},
              {"min_rank", report.min_rank()},
              {"max_rank", report.max_rank()},
              {"points", points}};
}

int run_independence(IndependenceOptions opts, std::ostream& out, std::ostream& err) {
  const SystemParams params = opts.common.make_params();
  if (opts.samples < 1) throw ConfigError("--samples must be at least 1");

  analysis::SamplingSpec sampling;
  sampling.count = opts.samples;
  sampling.seed = opts.seed;

  const int expected = 2 * params.dof() - 1;
  analysis::GradientEngine engine(params);

  std::vector<ObservableRef> base;
  try {
    base = opts.fradkin ? analysis::fradkin_set(params) : analysis::canonical_invariant_set(params);
  } catch (const CaseMismatchError& e) {
    throw ConfigError(e.what());
  }
  const analysis::RankReport base_report =
      analysis::independence_rank(engine, base, sampling, opts.threshold);

  json report;
  report["params"] = params_json(params);
  report["seed"] = opts.seed;
  report["expected_rank"] = expected;
  report["set"] = opts.fradkin ? "fradkin" : "canonical";
  report["base"] = rank_json(base_report, base);

  bool ok = base_report.min_rank() == expected && base_report.max_rank() == expected;

  if (!opts.fradkin && params.dof() >= 2) {
    auto augmented = base;
    augmented.push_back({ObservableKind::ReM, 0, 1});
    const analysis::RankReport augmented_report =
        analysis::independence_rank(engine, augmented, sampling, opts.threshold);
    report["augmented"] = rank_json(augmented_report, augmented);
    ok = ok && augmented_report.max_rank() <= expected;
  }

  write_output(opts.out_path, report.dump(2) + "\n", out);
  if (!ok) err << "independence: rank anomaly (see per-point report)\n";
  return ok ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"superintegrability toolkit for the rational anisotropic oscillator "
               "with inverse-square terms"};
  app.require_subcommand(1);

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the symbolic and numeric verification suites");
  add_common(verify_cmd, verify.common);
  verify_cmd->add_flag("--all", verify.all, "run every applicable check (default)");
  verify_cmd->add_flag("--symbolic", verify.symbolic_only, "exact polynomial checks only");
  verify_cmd->add_flag("--numeric", verify.numeric_only, "sampled and trajectory checks only");
  verify_cmd->add_option("--case", verify.case_name, "printed case id (iso_1_1, aniso_2_1, aniso_3_1)");
  verify_cmd->add_option("--samples", verify.samples, "sample count for numeric checks");
  verify_cmd->add_option("--seed", verify.seed, "sampling seed (default 0)");
  verify_cmd->add_option("--degree-limit", verify.degree_limit, "symbolic expansion degree limit");
  verify_cmd->add_option("--x", verify.x0, "initial positions for the drift run")->delimiter(',');
  verify_cmd->add_option("--p", verify.p0, "initial momenta for the drift run")->delimiter(',');
  verify_cmd->add_option("--t-end", verify.t_end, "drift-run horizon (default 10 pi / omega0)");
  verify_cmd->add_option("--tol", verify.tolerance, "integrator tolerance (default 1e-12)");
  verify_cmd->add_option("--out", verify.out_path, "write the JSON report to a file");

  TrajectoryOptions trajectory;
  CLI::App* trajectory_cmd =
      app.add_subcommand("trajectory", "integrate and export a trajectory as CSV");
  add_common(trajectory_cmd, trajectory.common);
  trajectory_cmd->add_option("--x", trajectory.x0, "initial positions")->required()->delimiter(',');
  trajectory_cmd->add_option("--p", trajectory.p0, "initial momenta")->required()->delimiter(',');
  trajectory_cmd->add_option("--t-end", trajectory.t_end, "integration horizon")->required();
  trajectory_cmd->add_option("--tol", trajectory.tolerance, "integrator tolerance (default 1e-12)");
  trajectory_cmd->add_option("--stride", trajectory.stride, "output sample spacing (default t_end/1000)");
  trajectory_cmd->add_option("--out", trajectory.out_path, "CSV file (default standard output)");

  ExpandOptions expand;
  CLI::App* expand_cmd =
      app.add_subcommand("expand", "print the symbolic expansion of the coupling invariants");
  expand_cmd->add_option("--ratios", expand.ratios, "frequency multipliers n_x,n_y")
      ->required()
      ->delimiter(',');
  expand_cmd->add_flag("--check-paper", expand.check_paper,
                       "also verify the printed closed form when the ratios have one");
  expand_cmd->add_option("--degree-limit", expand.degree_limit, "symbolic expansion degree limit");
  expand_cmd->add_option("--out", expand.out_path, "write the expansion to a file");

  IndependenceOptions independence;
  CLI::App* independence_cmd = app.add_subcommand(
      "independence", "numerical rank of the invariant differentials at sampled points");
  add_common(independence_cmd, independence.common);
  independence_cmd->add_option("--samples", independence.samples, "sample count (default 100)");
  independence_cmd->add_option("--seed", independence.seed, "sampling seed (default 0)");
  independence_cmd->add_option("--threshold", independence.threshold,
                               "relative singular-value threshold (default 1e-8)");
  independence_cmd->add_flag("--fradkin", independence.fradkin,
                             "use the isotropic-tensor set (all ratios must be 1)");
  independence_cmd->add_option("--out", independence.out_path, "write the JSON report to a file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (verify_cmd->parsed()) return run_verify(std::move(verify), out, err);
    if (trajectory_cmd->parsed()) return run_trajectory(std::move(trajectory), out, err);
    if (expand_cmd->parsed()) return run_expand(std::move(expand), out, err);
    return run_independence(std::move(independence), out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int a = 1; a < argc; ++a) args.emplace_back(argv[a]);
  return run(std::move(args), std::cout, std::cerr);
}

}  // namespace rosc::cli
