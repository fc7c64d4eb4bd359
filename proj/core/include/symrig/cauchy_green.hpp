#pragma once

#include <vector>

#include "symrig/disc_area.hpp"
#include "symrig/types.hpp"

namespace symrig {

/// Output of the Cauchy transform T g(zeta) = -(1/pi) int_D g(tau) / (tau - zeta) dA(tau) on a uniform
/// polar grid (radius-major node order).
struct CauchyGreenResult {
  std::vector<Cx> values;
  /// Beurling transform d/dzeta of T g at the nodes.
  std::vector<Cx> beurling;
  /// T g on the unit circle at the grid angles.
  std::vector<Cx> boundary;
  /// T g(0).
  Cx origin = 0.0;
};

/// Precomputed plan for one grid. Works mode by mode in theta: input mode m maps to output mode m - 1
/// through a radial integral against (rho/r)^{|n|} or (r/rho)^n, evaluated by recurrences over
/// cells with Gauss-Legendre on a degree-7 interpolant of each mode profile (reflected through the
/// origin). The Nyquist band is dropped.
class CauchyGreen {
 public:
  CauchyGreen(int n_r, int n_theta);

  const PolarGrid& grid() const { return grid_; }
  CauchyGreenResult apply(const std::vector<Cx>& g) const;

 private:
  struct Node {
    double rho;
    double weight;
    static constexpr int kPoints = 8;
    int stencil[kPoints];
    bool reflected[kPoints];
    double lagrange[kPoints];
  };
  PolarGrid grid_;
  int n_r_;
  int n_theta_;
  /// segments_[s] covers [0, r_0] for s = 0, [r_{s-1}, r_s] for 1 <= s < n_r, [r_{n_r-1}, 1] for s = n_r.
  std::vector<std::vector<Node>> segments_;
};

/// Cauchy transform normalized so that w(0) = 0; then dw/dzetabar = g.
std::vector<Cx> cauchy_green(const PolarGrid& grid, const std::vector<Cx>& g);

/// Spectral theta derivative combined with fourth-order radial differences (reflected through the
/// origin, one-sided near r = 1), returned as (d/dxi, d/deta) at the nodes of a uniform grid.
std::pair<std::vector<Cx>, std::vector<Cx>> grid_derivatives(const PolarGrid& grid, const std::vector<Cx>& f);

}  // namespace symrig
