#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "symrig/acs.hpp"

namespace symrig {

/// A(z) sampled on the lattice [-extent, extent]^{2n} with `per_axis` nodes per real axis.
/// Layout is row-major over (x_1, y_1, ..., x_n, y_n, row, col, re/im).
struct FieldGrid {
  int dim = 0;
  int per_axis = 0;
  double extent = 0.0;
  std::vector<double> data;

  std::size_t node_count() const;
  ComplexLinearMap at(std::size_t node) const;
};

FieldGrid sample_field_grid(const MatrixField& f, double extent, int per_axis = 64);

/// Multilinear interpolation of the grid; zero outside the lattice box.
MatrixField field_from_grid(FieldGrid grid);

/// Writes `path` (little-endian float64) and `path` + ".json" (shape and bounds).
void write_field_grid(const FieldGrid& grid, const std::filesystem::path& path);
FieldGrid read_field_grid(const std::filesystem::path& path);

/// Builds a field from its JSON descriptor:
///   {"kind": "constant", "matrix": M, "support"?: domain}
///   {"kind": "bump", "direction": M, "amplitude": a, "center"?: z, "radius": r}
///   {"kind": "grid", "path": file}  (relative paths resolve against base_dir)
///   {"kind": "pushforward", "map": {"type": "linear", "matrix": T} | {"type": "twist", "dim": n,
///    "amplitude": a, "radius": r}}
/// Optional keys for every kind: "norm_bound" (overrides the computed bound) and
/// "truncate": {"inner": domain, "width": w}.
MatrixField field_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

}  // namespace symrig
