#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "symrig/types.hpp"

namespace symrig {

class Domain;

/// Euclidean ball B^{2n}(radius) in C^n.
struct Ball {
  double radius;
  int dim;
};
/// D(radius) in C.
struct Disc {
  double radius;
};
/// D(r_1) x ... x D(r_m).
struct Polydisc {
  std::vector<double> radii;
};
/// {|x_1|^2 + |x_2|^2 < r, |y_1|^2 + |y_2|^2 < r} in C^2 (r enters linearly, not squared).
struct RealBidisc {
  double r;
};
/// C^{axis} x D(radius) x C^{dim-axis-1}; `axis` is zero-based.
struct Cylinder {
  double radius;
  int dim;
  int axis;
};
/// Cartesian product; coordinates of the factors are concatenated in order.
struct Product {
  std::vector<Domain> factors;
};
/// T(base) for an orthogonal real matrix T.
struct Transformed {
  RealLinearMap matrix;
  std::shared_ptr<const Domain> base;
};

class Domain {
 public:
  using Variant = std::variant<Ball, Disc, Polydisc, RealBidisc, Cylinder, Product, Transformed>;

  static Domain ball(double radius, int dim);
  static Domain disc(double radius);
  static Domain polydisc(std::vector<double> radii);
  static Domain unit_polydisc(int dim);
  static Domain real_bidisc(double r = 1.0);
  static Domain cylinder(double radius, int dim, int axis = 0);
  static Domain product(std::vector<Domain> factors);
  /// Throws InvalidInput unless `t` is orthogonal of matching size.
  static Domain transformed(const RealLinearMap& t, Domain base);

  const Variant& variant() const { return variant_; }
  /// Complex dimension n.
  int dim() const { return dim_; }
  /// Short human-readable description, e.g. "RealBidisc(1) x Polydisc(1)".
  std::string describe() const;

 private:
  Domain(Variant v, int dim) : variant_(std::move(v)), dim_(dim) {}
  Variant variant_;
  int dim_;
};

/// Strict-inequality membership.
bool contains(const Domain& g, const CxVector& z);

/// Continuous gauge with G = {level < 1} and the boundary on {level = 1}.
double boundary_level(const Domain& g, const CxVector& z);

/// Radius of the largest centred Euclidean ball inside G. Unsupported for cylinders.
double inradius(const Domain& g);
/// sup |z| over G (infinite for cylinders).
double outer_radius(const Domain& g);
/// sup |z_k| over G (zero-based k); infinite along the free directions of a cylinder.
double axis_extent(const Domain& g, int k);

/// Circle t -> cos(t) u + sin(t) v with (u, v) orthonormal in R^{2n}.
struct BoundaryCircle {
  CxVector u;
  CxVector v;
  int label = 0;

  CxVector point(double angle) const;
  /// Euclidean distance from z to the circle.
  double distance(const CxVector& z) const;
};

/// Complexified circle t -> (t + 1/t)/2 u + (t - 1/t)/(2i) v, t in C \ {0}.
/// The points t = 0 and t = infinity of the projective closure are never evaluated.
struct AlgebraicCurve {
  CxVector u;
  CxVector v;

  CxVector evaluate(Cx t) const;
};

/// Circles of dG meeting the sphere of radius inradius(G) = 1. Supports unit polydiscs, real
/// bidiscs, products thereof and orthogonal images. Labels are 1-based in coordinate order.
std::vector<BoundaryCircle> boundary_circles(const Domain& g);

AlgebraicCurve complexify(const BoundaryCircle& c);

/// The complexified curve meets the origin iff u and v are C-dependent, i.e. the smallest
/// singular value of the n x 2 complex matrix [u v] vanishes.
double origin_passage_gap(const AlgebraicCurve& c);
bool passes_through_origin(const AlgebraicCurve& c, double tol = kDefaultTol);

}  // namespace symrig
