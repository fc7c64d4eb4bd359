#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "symrig/acs.hpp"
#include "symrig/disc_area.hpp"
#include "symrig/types.hpp"

namespace symrig {

struct SolverConfig {
  int n_r = 128;
  int n_theta = 256;
  /// Bound on the holomorphy residual required for a converged solution.
  double fixed_point_tol = 1e-6;
  /// Iteration stops once the sup-norm change between iterates drops below this.
  double increment_tol = 1e-12;
  int max_iter = 200;
  double relaxation = 1.0;
  /// Largest admissible sup ||A||.
  double regime_bound = 0.5;
};

struct DiscSolution {
  /// Node values on the uniform polar grid with independently differenced derivatives.
  ParamDisc z;
  double residual = 0.0;
  AreaReport areas;
  /// max over the boundary angles of ||f_k| - 1|.
  double boundary_deviation = 0.0;
  double through_point_error = 0.0;
  int axis = 0;
  CxVector target;
  /// Z on the unit circle at the grid angles.
  std::vector<CxVector> boundary;
  int iterations = 0;
  /// Sup-norm change between successive iterates.
  std::vector<double> increments;
  /// Increment criterion met and residual <= fixed_point_tol.
  bool converged = false;
};

/// Solves Z_zetabar = A(Z) conj(Z_zeta) on the unit disc with |f_k| = 1 and Re f_j constant (j != k) on
/// the boundary and Z(0) = x. Axis `k` is zero-based. Throws InvalidInput when F exceeds the regime
/// bound or is not supported inside {|z_k| < 1}, and Divergence when max_iter is exhausted.
DiscSolution solve_disc(const MatrixField& f, const CxVector& x, int k, const SolverConfig& cfg = {});

struct SweepLevel {
  double inner_radius = 0.0;
  DiscSolution solution;
  /// Area of the part of Z lying outside the unit polydisc (node indicator).
  double area_outside = 0.0;
};

/// One truncated solve per inner polydisc radius (increasing); the cut-off band has width `width`.
std::vector<SweepLevel> disc_family_sweep(const MatrixField& f, const std::vector<double>& inner_radii, int k,
                                          const SolverConfig& cfg = {}, double width = 0.05,
                                          const CxVector* x = nullptr);

/// Summary without grid data.
nlohmann::json solution_summary(const DiscSolution& s);

/// Writes Z node values as little-endian float64 (shape n_r x n_theta x n x 2, row-major) to `path`
/// and the shape sidecar to `path` + ".json".
void write_solution_grid(const DiscSolution& s, const std::filesystem::path& path);

}  // namespace symrig
