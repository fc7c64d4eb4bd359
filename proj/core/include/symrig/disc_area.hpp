#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "symrig/acs.hpp"
#include "symrig/domains.hpp"
#include "symrig/types.hpp"

namespace symrig {

/// Tensor grid on the closed unit disc in polar coordinates (r, theta).
struct PolarGrid {
  std::vector<double> radii;
  std::vector<double> radial_weights;  // weights for dr on [0, 1]
  std::vector<double> angles;
  std::vector<double> angular_weights;  // weights for dtheta on [0, 2 pi)

  /// Gauss-Legendre in both r and theta.
  static PolarGrid gauss_legendre(int n_r, int n_theta);
  /// Cell-centred r_i = (i + 1/2)/n_r with midpoint weights; theta_j = 2 pi j / n_theta.
  static PolarGrid uniform(int n_r, int n_theta);

  int n_r() const { return static_cast<int>(radii.size()); }
  int n_theta() const { return static_cast<int>(angles.size()); }
  std::size_t size() const { return radii.size() * angles.size(); }
  /// Flattened index, radius-major.
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * angles.size() + j; }
  Cx node(int i, int j) const;
  /// dA weight r dr dtheta.
  double area_weight(int i, int j) const;
};

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

/// Node data of a disc map: values and the partial derivatives in xi and eta.
struct GridSamples {
  PolarGrid grid;
  std::vector<CxVector> values;
  std::vector<CxVector> d_xi;
  std::vector<CxVector> d_eta;
};

/// A map u from the unit disc into C^n, given by a callable and/or grid samples.
class ParamDisc {
 public:
  using Map = std::function<CxVector(Cx)>;
  using Derivatives = std::function<std::pair<CxVector, CxVector>(Cx)>;

  /// Derivatives fall back to centred differences with h = 1e-5 (relative) when omitted.
  static ParamDisc from_map(int dim, Map u, Derivatives du = nullptr);
  /// Holomorphic map with complex derivative du/dzeta: u_xi = u', u_eta = i u'.
  static ParamDisc holomorphic(int dim, Map u, Map du_dzeta);
  static ParamDisc from_samples(GridSamples samples);

  int dim() const { return dim_; }
  bool has_map() const { return static_cast<bool>(map_); }
  CxVector value(Cx zeta) const;
  std::pair<CxVector, CxVector> derivatives(Cx zeta) const;
  GridSamples sample(const PolarGrid& grid) const;
  const std::optional<GridSamples>& samples() const { return samples_; }

  /// Precomposition with a map of the disc (a Moebius automorphism, typically).
  ParamDisc precompose(std::function<Cx(Cx)> phi, std::function<Cx(Cx)> dphi) const;

 private:
  int dim_ = 0;
  Map map_;
  Derivatives derivs_;
  std::optional<GridSamples> samples_;
};

struct QuadratureConfig {
  int n_r = 128;
  int n_theta = 256;
  /// Two-level estimate (full vs half resolution) for callable maps.
  bool error_estimate = true;
  /// Membership samples per ray when locating clip boundaries.
  int crossing_samples = 256;
  /// Gauss-Legendre order on each radial segment between clip crossings.
  int segment_order = 16;
};

struct AreaReport {
  double total = 0.0;
  std::vector<double> per_component;
  std::optional<double> clipped_total;
  double error_estimate = 0.0;
};

/// Per-node integrand sum_j Im(conj(d_xi f_j) d_eta f_j).
double symplectic_density(const CxVector& d_xi, const CxVector& d_eta);

/// Integral of u^* omega_st over the disc with per-coordinate parts int f_j^*(dx_j ^ dy_j).
AreaReport symplectic_area(const ParamDisc& u, const QuadratureConfig& quad = {});
AreaReport symplectic_area(const GridSamples& samples);

/// One radial interval [begin, end] of parameter radii inside the clip domain along one ray.
struct RaySegment {
  double begin;
  double end;
};

struct ClipResult {
  double area = 0.0;
  std::vector<double> per_component;
  std::vector<double> angles;
  std::vector<double> angular_weights;
  /// Selected segments on each ray.
  std::vector<std::vector<RaySegment>> segments;
  /// Some selected segment reaches parameter radius 1 while still inside G.
  bool reaches_parameter_boundary = false;
};

struct ClipOptions {
  /// Keep only the connected piece of u^{-1}(G) that contains zeta = 0.
  bool origin_component = false;
};

/// Area of the part of u mapped into G. Clip boundaries are located per ray by bisection and the
/// radial pieces integrated with Gauss-Legendre; theta uses the uniform midpoint rule.
ClipResult clip_area(const ParamDisc& u, const Domain& g, const QuadratureConfig& quad = {},
                     const ClipOptions& options = {});
double clipped_area(const ParamDisc& u, const Domain& g, const QuadratureConfig& quad = {});

/// L2 norm over the disc of u_zetabar - A(u) conj(u_zeta).
double holomorphy_residual(const ParamDisc& u, const MatrixField& f, const QuadratureConfig& quad = {});
double holomorphy_residual(const GridSamples& samples, const MatrixField& f);

/// CSV with columns xi, eta, then re/im of each component.
void write_grid_csv(const GridSamples& samples, std::ostream& out);

}  // namespace symrig
