#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <Eigen/Core>

#include "symrig/acs.hpp"
#include "symrig/cr_solver.hpp"
#include "symrig/errors.hpp"
#include "symrig/holo_radius.hpp"
#include "symrig/linear_geometry.hpp"
#include "symrig/matrix_field_io.hpp"
#include "symrig/serialize.hpp"

namespace symrig::cli {

namespace {

using Json = nlohmann::json;

struct Loaded {
  Json value;
  std::filesystem::path base_dir;
};

// Inline JSON when the text starts with '{' or '[', otherwise a file path.
Loaded load_json(const std::string& text, const char* what) {
  if (text.empty()) throw InvalidInput(std::string("missing ") + what);
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return {Json::parse(text), {}};
    std::ifstream in(text);
    if (!in) throw InvalidInput(std::string("cannot read ") + what + " file " + text);
    return {Json::parse(in), std::filesystem::path(text).parent_path()};
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON for ") + what + ": " + e.what());
  }
}

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x == std::string::npos) throw InvalidInput("");
    std::size_t used = 0;
    const int a = std::stoi(s.substr(0, x), &used);
    if (used != x) throw InvalidInput("");
    const int b = std::stoi(s.substr(x + 1), &used);
    if (used != s.size() - x - 1) throw InvalidInput("");
    return {a, b};
  } catch (const std::exception&) {
    throw InvalidInput("grid must look like 128x256, got \"" + s + "\"");
  }
}

MatrixField load_field(const Command& cmd) {
  const Loaded f = load_json(cmd.field, "field");
  MatrixField field = field_from_json(f.value, f.base_dir);
  if (cmd.norm_bound) {
    const double declared = *cmd.norm_bound;
    if (!(declared >= 0.0)) throw InvalidInput("norm bound must be nonnegative");
    if (declared < field.norm_bound() * (1.0 - 1e-12)) {
      throw InvalidInput("declared norm bound is below the field's sampled sup norm");
    }
    field = field.with_norm_bound(declared);
  }
  return field;
}

SolverConfig solver_config(const Command& cmd) {
  SolverConfig cfg;
  std::tie(cfg.n_r, cfg.n_theta) = parse_grid(cmd.grid);
  if (cmd.tol) cfg.fixed_point_tol = *cmd.tol;
  cfg.max_iter = cmd.max_iter;
  return cfg;
}

CxVector target_point(const Command& cmd, int dim) {
  if (cmd.target.empty()) return CxVector::Zero(dim);
  const CxVector x = vector_from_json(load_json(cmd.target, "target").value);
  if (x.size() != dim) throw InvalidInput("target dimension does not match the field");
  return x;
}

int zero_based_axis(const Command& cmd, int dim) {
  if (cmd.axis < 1 || cmd.axis > dim) throw InvalidInput("axis must lie in 1.." + std::to_string(dim));
  return cmd.axis - 1;
}

OptimizerConfig optimizer_config(const Command& cmd) {
  OptimizerConfig opt;
  opt.seed = cmd.seed;
  opt.restarts = cmd.restarts;
  opt.nm_iterations = cmd.nm_iterations;
  if (opt.restarts < 1 || opt.nm_iterations < 1) throw InvalidInput("restarts and nm-iterations must be positive");
  return opt;
}

std::vector<CandidateFamily> families_for(const Command& cmd, int dim) {
  if (cmd.degree < 1 || cmd.degree > 8) throw InvalidInput("graph degree must lie in 1..8");
  return default_families(dim, cmd.degree);
}

Json config_echo(const Command& cmd) {
  Json c = {{"subcommand", cmd.subcommand}, {"seed", cmd.seed}};
  auto echo_input = [&](const char* key, const std::string& v) {
    if (v.empty()) return;
    try {
      c[key] = load_json(v, key).value;
    } catch (const Error&) {
      c[key] = v;
    }
  };
  echo_input("matrix", cmd.matrix);
  echo_input("domain", cmd.domain);
  echo_input("field", cmd.field);
  if (cmd.tol) c["tol"] = *cmd.tol;
  const std::string& s = cmd.subcommand;
  if (s == "solve-disc" || s == "sweep") {
    c["axis"] = cmd.axis;
    echo_input("target", cmd.target);
    c["grid"] = cmd.grid;
    c["max_iter"] = cmd.max_iter;
    if (cmd.norm_bound) c["norm_bound"] = *cmd.norm_bound;
  }
  if (s == "sweep") {
    c["radii"] = cmd.radii;
    c["width"] = cmd.width;
  }
  if (s == "rh-estimate" || s == "census") {
    c["degree"] = cmd.degree;
    c["restarts"] = cmd.restarts;
    c["nm_iterations"] = cmd.nm_iterations;
  }
  if (s == "certify") c["radius"] = cmd.radius;
  return c;
}

Json run_classify(const Command& cmd) {
  const RealLinearMap t = real_matrix_from_json(load_json(cmd.matrix, "matrix").value);
  return to_json(classify_orthogonal(t, cmd.tol.value_or(kDefaultTol)));
}

Json run_rh(const Command& cmd) {
  const Domain g = domain_from_json(load_json(cmd.domain, "domain").value);
  const RadiusEstimate est = estimate_rh(g, families_for(cmd, g.dim()), optimizer_config(cmd));
  Json r = to_json(est);
  r["domain"] = g.describe();
  r["notes"] = {"lower is a rigorous bound from the inscribed ball",
                "upper is the best value over the searched families and is not the true holomorphic radius"};
  return r;
}

Json run_census(const Command& cmd) {
  const Domain g = domain_from_json(load_json(cmd.domain, "domain").value);
  CensusConfig cfg;
  cfg.optimizer = optimizer_config(cmd);
  Json r = to_json(minimal_disc_census(g, families_for(cmd, g.dim()), cfg));
  r["domain"] = g.describe();
  r["notes"] = {"minimizers are clustered by tangent direction at the origin",
                "the count is a property-based witness over the searched families, not a proof"};
  return r;
}

Json run_certify(const Command& cmd) {
  const Domain g = domain_from_json(load_json(cmd.domain, "domain").value);
  if (!(cmd.radius > 0.0)) throw InvalidInput("radius must be positive");
  RadiusEstimate est;
  est.lower = lelong_lower_bound(g);
  Json r = {{"domain", g.describe()}, {"radius", cmd.radius}, {"lower_bound", est.lower}};
  r["holomorphic_radius"] = to_json(nonsqueeze_certificate(g, cmd.radius, est));
  try {
    r["embedded_ball_bound"] = embedded_ball_bound(g);
    r["ball"] = to_json(ball_certificate(g, cmd.radius));
  } catch (const Unsupported&) {
    r["embedded_ball_bound"] = nullptr;
    r["ball"] = nullptr;
  }
  return r;
}

Json run_solve(const Command& cmd, int& exit_code) {
  const MatrixField f = load_field(cmd);
  const int k = zero_based_axis(cmd, f.dim());
  const DiscSolution sol = solve_disc(f, target_point(cmd, f.dim()), k, solver_config(cmd));
  if (!cmd.grid_out.empty()) write_solution_grid(sol, cmd.grid_out);
  if (!sol.converged) exit_code = kNonConvergence;
  return solution_summary(sol);
}

Json run_sweep(const Command& cmd, int& exit_code) {
  const MatrixField f = load_field(cmd);
  const int k = zero_based_axis(cmd, f.dim());
  const CxVector x = target_point(cmd, f.dim());
  const auto levels = disc_family_sweep(f, cmd.radii, k, solver_config(cmd), cmd.width, &x);
  Json out = Json::array();
  for (const auto& l : levels) {
    if (!l.solution.converged) exit_code = kNonConvergence;
    out.push_back({{"inner_radius", l.inner_radius},
                   {"area_outside", l.area_outside},
                   {"solution", solution_summary(l.solution)}});
  }
  return {{"levels", out}};
}

}  // namespace

Json execute(const Command& cmd, int& exit_code) {
  const auto start = std::chrono::steady_clock::now();
  exit_code = kOk;
  Json report = {{"command", cmd.subcommand},
                 {"version", kVersion},
                 {"seed", cmd.seed},
                 {"libraries",
                  {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}}};
  report["config"] = config_echo(cmd);
  report["result"] = nullptr;
  try {
    const std::string& s = cmd.subcommand;
    if (s == "classify") report["result"] = run_classify(cmd);
    else if (s == "rh-estimate") report["result"] = run_rh(cmd);
    else if (s == "census") report["result"] = run_census(cmd);
    else if (s == "certify") report["result"] = run_certify(cmd);
    else if (s == "solve-disc") report["result"] = run_solve(cmd, exit_code);
    else if (s == "sweep") report["result"] = run_sweep(cmd, exit_code);
    else throw InvalidInput("unknown subcommand \"" + s + "\"");
  } catch (const Divergence& e) {
    exit_code = kNonConvergence;
    report["error"] = {{"kind", "divergence"},
                       {"message", e.what()},
                       {"last_increment", e.last_increment()},
                       {"iterations", e.iterations()}};
  } catch (const Error& e) {
    exit_code = kInvalidInput;
    report["error"] = {{"kind", "invalid_input"}, {"message", e.what()}};
  } catch (const nlohmann::json::exception& e) {
    exit_code = kInvalidInput;
    report["error"] = {{"kind", "invalid_input"}, {"message", e.what()}};
  }
  report["status"] = exit_code == kOk ? "ok" : (exit_code == kInvalidInput ? "invalid_input" : "non_convergence");
  if (cmd.timing) {
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

int run(const Command& cmd, std::ostream& diagnostics) {
  int code = kOk;
  const Json report = execute(cmd, code);
  const std::string text = report.dump(2) + "\n";
  if (cmd.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cmd.output, std::ios::binary);
    if (!out) {
      diagnostics << "error: cannot write report to " << cmd.output << "\n";
      return kInvalidInput;
    }
    out << text;
  }
  if (report.contains("error")) diagnostics << "error: " << report["error"]["message"].get<std::string>() << "\n";
  return code;
}

}  // namespace symrig::cli
