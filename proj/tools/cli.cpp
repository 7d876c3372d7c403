#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "brlkit/errors.hpp"
#include "brlkit/hinf.hpp"
#include "brlkit/io.hpp"
#include "brlkit/kyp.hpp"
#include "brlkit/linalg.hpp"
#include "brlkit/operators.hpp"
#include "brlkit/similarity.hpp"
#include "brlkit/system.hpp"

namespace brlkit::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double env_default_tol() {
  if (const char* value = std::getenv("BRLKIT_TOL")) {
    try {
      return std::stod(value);
    } catch (...) {
      // fall through to the built-in default
    }
  }
  return kTol.relative;
}

Complex parse_complex(const std::string& text) {
  try {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return Complex(std::stod(text), 0.0);
    return Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
  } catch (const Error&) {
    throw;
  } catch (...) {
    raise(ErrorCode::SchemaError, "cannot parse complex value \"" + text + "\" (use re or re,im)");
  }
}

struct Report {
  std::string command;
  std::vector<std::string> inputs;
  json result = json::object();
  std::vector<std::string> diagnostics;
  Clock::time_point start = Clock::now();

  json finish() const {
    json doc;
    doc["command"] = command;
    doc["inputs"] = inputs;
    doc["result"] = result;
    doc["diagnostics"] = diagnostics;
    doc["elapsed_ms"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
    return doc;
  }
};

void emit(const Report& report, bool as_json, std::ostream& out, std::ostream& err,
          const std::vector<std::string>& human_lines) {
  if (as_json) {
    out << report.finish().dump() << "\n";
  } else {
    for (const auto& line : human_lines) out << line << "\n";
  }
  for (const auto& diag : report.diagnostics) err << diag << "\n";
}

std::string fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::Property: return 1;
    case ErrorKind::Numeric: return 3;
  }
  return 3;
}

struct Options {
  bool as_json = false;
  double tol = env_default_tol();
  std::string sys_path, second_path, h_path, input_path, out_path;
  std::string z_text, kind;
  int count = 8;
  int horizon = 0;
  int steps = 0;
  int impulse = -1;
  int samples = kTol.circle_samples;
  int max_iter = kTol.riccati_max_iterations;
  int probe_n = 1;
  double radius = 1.0;
  bool certify = false;
  bool reduce = false;
};

int dispatch_eval(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "eval";
  report.inputs = {opt.sys_path};
  const SystemRealization sys = parse_system_file(opt.sys_path);
  const TransferSample sample = eval_transfer(sys, parse_complex(opt.z_text));
  report.result = json::parse(to_json_string(sample));
  emit(report, opt.as_json, out, err,
       {"z: " + fmt(sample.z.real()) + (sample.z.imag() != 0.0 ? "," + fmt(sample.z.imag()) : ""),
        "condition: " + fmt(sample.condition),
        "value: " + to_json_string(sample.value)});
  return 0;
}

int dispatch_moments(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "moments";
  report.inputs = {opt.sys_path};
  const SystemRealization sys = parse_system_file(opt.sys_path);
  const auto moments = markov_coefficients(sys, opt.count);
  json list = json::array();
  std::vector<std::string> lines;
  for (size_t k = 0; k < moments.size(); ++k) {
    list.push_back(json::parse(to_json_string(moments[k])));
    lines.push_back("F_" + std::to_string(k) + ": " + to_json_string(moments[k]));
  }
  report.result["coefficients"] = std::move(list);
  emit(report, opt.as_json, out, err, lines);
  return 0;
}

int dispatch_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "simulate";
  report.inputs = {opt.sys_path};
  const SystemRealization sys = parse_system_file(opt.sys_path);
  Vector x0 = Vector::Zero(sys.n_state);
  std::vector<Vector> inputs;
  if (!opt.input_path.empty()) {
    report.inputs.push_back(opt.input_path);
    SimulationInput sim = parse_simulation_input_file(opt.input_path);
    if (sim.has_x0) x0 = sim.x0;
    inputs = std::move(sim.inputs);
  } else if (opt.impulse >= 0) {
    if (opt.impulse >= sys.n_in)
      raise(ErrorCode::DimensionMismatch, "impulse channel out of range");
    inputs.assign(static_cast<size_t>(std::max(opt.steps, 1)), Vector::Zero(sys.n_in));
    inputs[0](opt.impulse) = 1.0;
  } else {
    raise(ErrorCode::SchemaError, "simulate needs --input FILE or --impulse J with --steps N");
  }
  const Trajectory traj = simulate(sys, x0, inputs);
  report.result = json::parse(to_json_string(traj));
  emit(report, opt.as_json, out, err,
       {"steps: " + std::to_string(traj.inputs.size()),
        "final state: " + to_json_string(Matrix(traj.states.back().transpose()))});
  return 0;
}

int dispatch_minimal(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "minimal";
  report.inputs = {opt.sys_path};
  const SystemRealization sys = parse_system_file(opt.sys_path);
  const SystemRealization reduced = kalman_minimal(sys, opt.tol);
  report.result["original_dim"] = sys.n_state;
  report.result["reduced_dim"] = reduced.n_state;
  report.result["system"] = json::parse(to_json_string(reduced));
  if (!opt.out_path.empty()) {
    std::ofstream file(opt.out_path);
    if (!file) raise(ErrorCode::IoError, "cannot write " + opt.out_path);
    file << to_json_string(reduced, 2) << "\n";
  }
  emit(report, opt.as_json, out, err,
       {"state dimension: " + std::to_string(sys.n_state) + " -> " +
        std::to_string(reduced.n_state)});
  return 0;
}

int dispatch_classify(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "classify";
  report.inputs = {opt.sys_path};
  const SystemRealization sys = parse_system_file(opt.sys_path);
  const MinimalityReport verdict = classify_minimality(sys, opt.tol);
  report.result = json::parse(to_json_string(verdict));
  if (!verdict.minimal) report.diagnostics.push_back("system is not minimal");
  emit(report, opt.as_json, out, err,
       {std::string("controllable: ") + (verdict.controllable ? "yes" : "no") +
            " (rank " + std::to_string(verdict.reach_rank) + "/" +
            std::to_string(sys.n_state) + ")",
        std::string("observable: ") + (verdict.observable ? "yes" : "no") + " (rank " +
            std::to_string(verdict.obs_rank) + "/" + std::to_string(sys.n_state) + ")",
        std::string("minimal: ") + (verdict.minimal ? "yes" : "no")});
  return verdict.minimal ? 0 : 1;
}

int dispatch_hankel(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "hankel";
  report.inputs = {opt.sys_path};
  const SystemRealization sys = parse_system_file(opt.sys_path);
  const int horizon = opt.horizon > 0 ? opt.horizon : std::max<int>(1, sys.n_state);
  const OperatorTruncation trunc = truncate_operators(sys, horizon);
  const double factorization_residual =
      (trunc.hankel - trunc.Wo * trunc.controllability_ascending()).norm();
  report.result = json::parse(to_json_string(trunc));
  report.result["factorization_residual"] = factorization_residual;
  emit(report, opt.as_json, out, err,
       {"horizon: " + std::to_string(horizon),
        "hankel: " + std::to_string(trunc.hankel.rows()) + "x" +
            std::to_string(trunc.hankel.cols()),
        "factorization residual: " + fmt(factorization_residual)});
  return 0;
}

int dispatch_similarity(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "similarity";
  report.inputs = {opt.sys_path, opt.second_path};
  SystemRealization a = parse_system_file(opt.sys_path);
  SystemRealization b = parse_system_file(opt.second_path);
  if (opt.reduce) {
    const Index na = a.n_state, nb = b.n_state;
    a = kalman_minimal(a, opt.tol);
    b = kalman_minimal(b, opt.tol);
    if (a.n_state != na || b.n_state != nb)
      report.diagnostics.push_back("reduced state dimensions to " + std::to_string(a.n_state) +
                                   " and " + std::to_string(b.n_state));
  }
  const SimilarityMap map = compute_similarity(a, b, opt.tol, opt.horizon);
  report.result = json::parse(to_json_string(map));
  emit(report, opt.as_json, out, err,
       {"residuals: r_AX=" + fmt(map.residuals.r_AX) + " r_B=" + fmt(map.residuals.r_B) +
            " r_C=" + fmt(map.residuals.r_C) + " r_D=" + fmt(map.residuals.r_D) +
            " r_inv=" + fmt(map.residuals.r_inv),
        std::string("valid: ") + (map.valid ? "yes" : "no")});
  return map.valid ? 0 : 1;
}

int dispatch_kyp_check(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "kyp-check";
  report.inputs = {opt.sys_path, opt.h_path};
  const SystemRealization sys = parse_system_file(opt.sys_path);
  const Matrix H = parse_hermitian_file(opt.h_path);
  const Matrix slack = kyp_slack(sys, H);
  const double margin = hermitian_min_eig(slack);
  const bool holds = margin >= -opt.tol;
  report.result["margin"] = margin;
  report.result["holds"] = holds;
  report.result["slack"] = json::parse(to_json_string(slack));
  if (!holds) report.diagnostics.push_back("inequality fails: margin " + fmt(margin));
  emit(report, opt.as_json, out, err,
       {"margin: " + fmt(margin), std::string("holds: ") + (holds ? "yes" : "no")});
  return holds ? 0 : 1;
}

int dispatch_kyp_solve(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "kyp-solve";
  report.inputs = {opt.sys_path};
  const SystemRealization sys = parse_system_file(opt.sys_path);
  const KypCertificate cert = riccati_solve(sys, opt.tol, opt.max_iter, opt.samples);
  report.result = json::parse(to_json_string(cert));
  emit(report, opt.as_json, out, err,
       {"margin: " + fmt(cert.margin), "iterations: " + std::to_string(cert.iterations)});
  return 0;
}

int dispatch_kyp_strict(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "kyp-strict";
  report.inputs = {opt.sys_path};
  const SystemRealization sys = parse_system_file(opt.sys_path);
  const KypCertificate cert = strict_solve(sys, opt.tol, opt.max_iter, opt.samples);
  report.result = json::parse(to_json_string(cert));
  const bool strict_ok = cert.margin > 0.0;
  if (!strict_ok) report.diagnostics.push_back("strict margin is not positive");
  emit(report, opt.as_json, out, err,
       {"margin: " + fmt(cert.margin), "epsilon: " + fmt(cert.epsilon.value_or(0.0)),
        "iterations: " + std::to_string(cert.iterations)});
  return strict_ok ? 0 : 1;
}

int dispatch_hinf(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "hinf";
  report.inputs = {opt.sys_path};
  const SystemRealization sys = parse_system_file(opt.sys_path);
  const double rho = spectral_radius(sys.A);
  report.result["spectral_radius"] = rho;
  if (rho >= 1.0) {
    report.result["classification"] = "unstable";
    report.diagnostics.push_back("spectral radius " + fmt(rho) + " >= 1");
    emit(report, opt.as_json, out, err,
         {"classification: unstable", "spectral radius: " + fmt(rho)});
    return 1;
  }
  std::vector<std::string> lines;
  if (opt.certify) {
    const NormBound bound = hinf_certified(sys, opt.tol, opt.samples);
    report.result["bound"] = json::parse(to_json_string(bound));
    lines.push_back("certified interval: [" + fmt(bound.lower) + ", " + fmt(bound.upper) + "]");
  } else {
    const double lower = sample_norm(sys, opt.samples, opt.radius);
    NormBound bound;
    bound.lower = lower;
    bound.upper = std::numeric_limits<double>::infinity();
    bound.samples = opt.samples;
    bound.certified = false;
    json b;
    b["lower"] = bound.lower;
    b["upper"] = nullptr;
    b["samples"] = bound.samples;
    b["certified"] = false;
    report.result["bound"] = std::move(b);
    lines.push_back("sampled lower bound: " + fmt(lower) + " (radius " + fmt(opt.radius) + ")");
  }
  if (opt.radius == 1.0) {
    const SchurClassification verdict = classify_schur(sys, opt.tol, opt.samples);
    report.result["classification"] = std::string(to_string(verdict));
    lines.push_back("classification: " + std::string(to_string(verdict)));
  }
  emit(report, opt.as_json, out, err, lines);
  return 0;
}

int dispatch_probe(const Options& opt, std::ostream& out, std::ostream& err) {
  Report report;
  report.command = "probe";
  if (opt.kind == "shift") {
    const SystemRealization sys = shift_probe(opt.probe_n);
    report.result["system"] = json::parse(to_json_string(sys));
    if (!opt.out_path.empty()) {
      std::ofstream file(opt.out_path);
      if (!file) raise(ErrorCode::IoError, "cannot write " + opt.out_path);
      file << to_json_string(sys, 2) << "\n";
    }
    emit(report, opt.as_json, out, err,
         {"shift truncation of dimension " + std::to_string(opt.probe_n)});
    return 0;
  }
  if (opt.kind == "divergence") {
    const double norm = divergence_probe(opt.probe_n);
    report.result["norm"] = norm;
    std::vector<std::string> lines = {"||Wo_" + std::to_string(opt.probe_n) + "|| = " + fmt(norm)};
    if (opt.probe_n >= 2) {
      const double ratio = norm / divergence_probe(opt.probe_n - 1);
      report.result["growth_ratio"] = ratio;
      lines.push_back("growth ratio vs N-1: " + fmt(ratio));
    } else {
      report.result["growth_ratio"] = nullptr;
    }
    emit(report, opt.as_json, out, err, lines);
    return 0;
  }
  raise(ErrorCode::SchemaError, "unknown probe kind \"" + opt.kind + "\"");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"brlkit: build, verify and certify KYP-inequality solutions for "
               "discrete-time linear systems"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool with_tol = true) {
    cmd->add_flag("--json", opt.as_json, "emit the machine-readable report");
    if (with_tol)
      cmd->add_option("--tol", opt.tol,
                      "tolerance (default from BRLKIT_TOL or " + fmt(env_default_tol()) + ")");
  };

  auto* eval = app.add_subcommand("eval", "evaluate the transfer function at a point");
  eval->add_option("system", opt.sys_path, "system JSON file")->required();
  eval->add_option("--z", opt.z_text, "evaluation point, re or re,im")->required();
  add_common(eval, false);

  auto* moments = app.add_subcommand("moments", "leading Markov coefficients");
  moments->add_option("system", opt.sys_path)->required();
  moments->add_option("--count", opt.count, "number of coefficients")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(moments, false);

  auto* simulate = app.add_subcommand("simulate", "run the state recursion");
  simulate->add_option("system", opt.sys_path)->required();
  simulate->add_option("--input", opt.input_path, "JSON file with inputs and optional x0");
  simulate->add_option("--impulse", opt.impulse, "unit impulse on the given input channel");
  simulate->add_option("--steps", opt.steps, "number of steps for --impulse")->capture_default_str();
  add_common(simulate, false);

  auto* minimal = app.add_subcommand("minimal", "Kalman-compress to a minimal realization");
  minimal->add_option("system", opt.sys_path)->required();
  minimal->add_option("--out", opt.out_path, "write the reduced system here");
  add_common(minimal);

  auto* classify = app.add_subcommand("classify", "controllability/observability ranks");
  classify->add_option("system", opt.sys_path)->required();
  add_common(classify);

  auto* hankel = app.add_subcommand("hankel", "horizon-N operator truncations");
  hankel->add_option("system", opt.sys_path)->required();
  hankel->add_option("--horizon", opt.horizon, "window length (default n_state)");
  add_common(hankel, false);

  auto* similarity = app.add_subcommand("similarity", "similarity between two realizations");
  similarity->add_option("system", opt.sys_path)->required();
  similarity->add_option("other", opt.second_path)->required();
  similarity->add_option("--horizon", opt.horizon, "truncation horizon override");
  similarity->add_flag("--reduce", opt.reduce, "Kalman-compress both systems first");
  add_common(similarity);

  auto* kyp_check = app.add_subcommand("kyp-check", "slack of a candidate H");
  kyp_check->add_option("system", opt.sys_path)->required();
  kyp_check->add_option("--h-file", opt.h_path, "matrix, {\"H\": ...} or certificate JSON")
      ->required();
  add_common(kyp_check);

  auto* kyp_solve = app.add_subcommand("kyp-solve", "Riccati fixed-point certificate");
  kyp_solve->add_option("system", opt.sys_path)->required();
  kyp_solve->add_option("--max-iter", opt.max_iter)->capture_default_str();
  kyp_solve->add_option("--samples", opt.samples, "sampled-norm gate density")->capture_default_str();
  add_common(kyp_solve);

  auto* kyp_strict = app.add_subcommand("kyp-strict", "strict certificate via augmentation");
  kyp_strict->add_option("system", opt.sys_path)->required();
  kyp_strict->add_option("--max-iter", opt.max_iter)->capture_default_str();
  kyp_strict->add_option("--samples", opt.samples)->capture_default_str();
  add_common(kyp_strict);

  auto* hinf = app.add_subcommand("hinf", "sampled and certified H-infinity bounds");
  hinf->add_option("system", opt.sys_path)->required();
  hinf->add_option("--samples", opt.samples)->capture_default_str();
  hinf->add_option("--radius", opt.radius, "sampling circle radius")->capture_default_str();
  hinf->add_flag("--certify", opt.certify, "bisect for a certified upper bound");
  add_common(hinf);

  auto* probe = app.add_subcommand("probe", "reference truncation families");
  probe->add_option("--kind", opt.kind, "shift or divergence")->required();
  probe->add_option("--n", opt.probe_n, "truncation size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  probe->add_option("--out", opt.out_path, "write the shift system here");
  add_common(probe, false);

  std::vector<const char*> argv;
  argv.push_back("brlkit");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(eval)) return dispatch_eval(opt, out, err);
    if (app.got_subcommand(moments)) return dispatch_moments(opt, out, err);
    if (app.got_subcommand(simulate)) return dispatch_simulate(opt, out, err);
    if (app.got_subcommand(minimal)) return dispatch_minimal(opt, out, err);
    if (app.got_subcommand(classify)) return dispatch_classify(opt, out, err);
    if (app.got_subcommand(hankel)) return dispatch_hankel(opt, out, err);
    if (app.got_subcommand(similarity)) return dispatch_similarity(opt, out, err);
    if (app.got_subcommand(kyp_check)) return dispatch_kyp_check(opt, out, err);
    if (app.got_subcommand(kyp_solve)) return dispatch_kyp_solve(opt, out, err);
    if (app.got_subcommand(kyp_strict)) return dispatch_kyp_strict(opt, out, err);
    if (app.got_subcommand(hinf)) return dispatch_hinf(opt, out, err);
    if (app.got_subcommand(probe)) return dispatch_probe(opt, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace brlkit::cli
