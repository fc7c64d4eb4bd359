#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using symrig::cli::Command;
  Command cmd;
  CLI::App app{"Symplectic rigidity toolkit", "symrig"};
  app.set_version_flag("--version", symrig::cli::kVersion);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cmd.output, "Report path (default: stdout)");
    sub->add_option("--seed", cmd.seed, "Random seed");
    sub->add_flag("--timing", cmd.timing, "Include wall time in the report (breaks byte-determinism)");
  };
  auto solver = [&](CLI::App* sub) {
    sub->add_option("--field", cmd.field, "Matrix field descriptor (inline JSON or file)")->required();
    sub->add_option("--axis", cmd.axis, "Cylinder axis k (1-based)");
    sub->add_option("--target", cmd.target, "Target point x as JSON [[re, im], ...] (default: origin)");
    sub->add_option("--norm-bound", cmd.norm_bound, "Declared sup norm of A");
    sub->add_option("--grid", cmd.grid, "Polar grid NrxNtheta");
    sub->add_option("--tol", cmd.tol, "Holomorphy residual tolerance");
    sub->add_option("--max-iter", cmd.max_iter, "Maximum fixed-point iterations");
  };
  auto search = [&](CLI::App* sub) {
    sub->add_option("--domain", cmd.domain, "Domain descriptor (inline JSON or file)")->required();
    sub->add_option("--degree", cmd.degree, "Polynomial graph degree");
    sub->add_option("--restarts", cmd.restarts, "Nelder-Mead starts per family");
    sub->add_option("--nm-iterations", cmd.nm_iterations, "Nelder-Mead iterations per start");
  };

  auto* classify = app.add_subcommand("classify", "Decide whether an orthogonal T maps the bidisc symplectically");
  classify->add_option("--matrix", cmd.matrix, "4x4 real matrix (inline JSON or file)")->required();
  classify->add_option("--tol", cmd.tol, "Decision tolerance");
  common(classify);

  auto* rh = app.add_subcommand("rh-estimate", "Estimate the holomorphic radius of a domain");
  search(rh);
  common(rh);

  auto* census = app.add_subcommand("census", "Count minimal analytic discs through the origin");
  search(census);
  common(census);

  auto* solve = app.add_subcommand("solve-disc", "Solve the quasilinear Cauchy-Riemann disc equation");
  solver(solve);
  solve->add_option("--grid-out", cmd.grid_out, "Write the solution grid (binary + JSON sidecar)");
  common(solve);

  auto* certify = app.add_subcommand("certify", "Non-squeezing certificates for a domain and cylinder radius");
  certify->add_option("--domain", cmd.domain, "Domain descriptor (inline JSON or file)")->required();
  certify->add_option("--radius", cmd.radius, "Cylinder radius R");
  common(certify);

  auto* sweep = app.add_subcommand("sweep", "Solve discs for a family of truncated fields");
  solver(sweep);
  sweep->add_option("--radii", cmd.radii, "Increasing inner polydisc radii")->required()->delimiter(',');
  sweep->add_option("--width", cmd.width, "Cut-off band width");
  common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : symrig::cli::kInvalidInput;
  }
  cmd.subcommand = app.get_subcommands().front()->get_name();
  return symrig::cli::run(cmd, std::cerr);
}
