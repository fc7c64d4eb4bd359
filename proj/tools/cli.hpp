#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace symrig::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kNonConvergence = 3 };

struct Command {
  std::string subcommand;
  /// Inline JSON or a path, per subcommand: matrix (classify), domain, field.
  std::string matrix;
  std::string domain;
  std::string field;
  /// Report destination; empty writes to stdout.
  std::string output;
  std::uint64_t seed = 0;
  bool timing = false;

  std::optional<double> tol;
  // solve-disc and sweep
  int axis = 1;
  std::string target;
  std::optional<double> norm_bound;
  std::string grid = "128x256";
  int max_iter = 200;
  std::string grid_out;
  std::vector<double> radii;
  double width = 0.05;
  // rh-estimate and census
  int degree = 4;
  int restarts = 8;
  int nm_iterations = 200;
  // certify
  double radius = 1.0;
};

/// Executes one command, writes its JSON report and returns the process exit code.
int run(const Command& cmd, std::ostream& diagnostics);

/// The report object that `run` writes, exposed for tests.
nlohmann::json execute(const Command& cmd, int& exit_code);

}  // namespace symrig::cli
