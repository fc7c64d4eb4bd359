#include "symrig/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "symrig/errors.hpp"
#include "symrig/linear_geometry.hpp"

namespace symrig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput(std::string(what) + " must be positive and finite");
}

void require_dim(const Domain& g, const CxVector& z) {
  if (z.size() != g.dim()) throw InvalidInput("point dimension does not match domain dimension");
}

double sq(double x) { return x * x; }

}  // namespace

Domain Domain::ball(double radius, int dim) {
  require_positive(radius, "ball radius");
  if (dim < 1) throw InvalidInput("ball dimension must be >= 1");
  return Domain(Ball{radius, dim}, dim);
}

Domain Domain::disc(double radius) {
  require_positive(radius, "disc radius");
  return Domain(Disc{radius}, 1);
}

Domain Domain::polydisc(std::vector<double> radii) {
  if (radii.empty()) throw InvalidInput("polydisc needs at least one radius");
  for (double r : radii) require_positive(r, "polydisc radius");
  const int n = static_cast<int>(radii.size());
  return Domain(Polydisc{std::move(radii)}, n);
}

Domain Domain::unit_polydisc(int dim) { return polydisc(std::vector<double>(dim, 1.0)); }

Domain Domain::real_bidisc(double r) {
  require_positive(r, "real bidisc radius");
  return Domain(RealBidisc{r}, 2);
}

Domain Domain::cylinder(double radius, int dim, int axis) {
  require_positive(radius, "cylinder radius");
  if (dim < 1 || axis < 0 || axis >= dim) throw InvalidInput("cylinder axis out of range");
  return Domain(Cylinder{radius, dim, axis}, dim);
}

Domain Domain::product(std::vector<Domain> factors) {
  if (factors.empty()) throw InvalidInput("product needs at least one factor");
  int n = 0;
  for (const auto& f : factors) n += f.dim();
  return Domain(Product{std::move(factors)}, n);
}

Domain Domain::transformed(const RealLinearMap& t, Domain base) {
  const int n = base.dim();
  if (t.rows() != 2 * n || t.cols() != 2 * n) throw InvalidInput("transform size does not match domain");
  if (!t.allFinite() || !is_orthogonal(t, kDefaultTol)) {
    throw InvalidInput("transformed domains require an orthogonal matrix");
  }
  return Domain(Transformed{t, std::make_shared<const Domain>(std::move(base))}, n);
}

std::string Domain::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Ball& b) { os << "Ball(" << b.radius << ", n=" << b.dim << ")"; },
                 [&](const Disc& d) { os << "Disc(" << d.radius << ")"; },
                 [&](const Polydisc& p) {
                   os << "Polydisc(";
                   for (size_t j = 0; j < p.radii.size(); ++j) os << (j ? "," : "") << p.radii[j];
                   os << ")";
                 },
                 [&](const RealBidisc& r) { os << "RealBidisc(" << r.r << ")"; },
                 [&](const Cylinder& c) {
                   os << "Cylinder(" << c.radius << ", n=" << c.dim << ", axis=" << c.axis + 1 << ")";
                 },
                 [&](const Product& p) {
                   for (size_t j = 0; j < p.factors.size(); ++j) os << (j ? " x " : "") << p.factors[j].describe();
                 },
                 [&](const Transformed& t) { os << "T(" << t.base->describe() << ")"; },
             },
             variant_);
  return os.str();
}

bool contains(const Domain& g, const CxVector& z) {
  require_dim(g, z);
  return std::visit(
      Overloaded{
          [&](const Ball& b) { return z.squaredNorm() < b.radius * b.radius; },
          [&](const Disc& d) { return std::abs(z(0)) < d.radius; },
          [&](const Polydisc& p) {
            for (size_t j = 0; j < p.radii.size(); ++j)
              if (!(std::abs(z(j)) < p.radii[j])) return false;
            return true;
          },
          [&](const RealBidisc& r) {
            const double xx = sq(z(0).real()) + sq(z(1).real());
            const double yy = sq(z(0).imag()) + sq(z(1).imag());
            return xx < r.r && yy < r.r;
          },
          [&](const Cylinder& c) { return std::abs(z(c.axis)) < c.radius; },
          [&](const Product& p) {
            Eigen::Index off = 0;
            for (const auto& f : p.factors) {
              if (!contains(f, z.segment(off, f.dim()))) return false;
              off += f.dim();
            }
            return true;
          },
          [&](const Transformed& t) {
            return contains(*t.base, to_complex(t.matrix.transpose() * to_real(z)));
          },
      },
      g.variant());
}

double boundary_level(const Domain& g, const CxVector& z) {
  require_dim(g, z);
  return std::visit(
      Overloaded{
          [&](const Ball& b) { return z.norm() / b.radius; },
          [&](const Disc& d) { return std::abs(z(0)) / d.radius; },
          [&](const Polydisc& p) {
            double m = 0.0;
            for (size_t j = 0; j < p.radii.size(); ++j) m = std::max(m, std::abs(z(j)) / p.radii[j]);
            return m;
          },
          [&](const RealBidisc& r) {
            const double xx = sq(z(0).real()) + sq(z(1).real());
            const double yy = sq(z(0).imag()) + sq(z(1).imag());
            return std::max(xx, yy) / r.r;
          },
          [&](const Cylinder& c) { return std::abs(z(c.axis)) / c.radius; },
          [&](const Product& p) {
            double m = 0.0;
            Eigen::Index off = 0;
            for (const auto& f : p.factors) {
              m = std::max(m, boundary_level(f, z.segment(off, f.dim())));
              off += f.dim();
            }
            return m;
          },
          [&](const Transformed& t) {
            return boundary_level(*t.base, to_complex(t.matrix.transpose() * to_real(z)));
          },
      },
      g.variant());
}

double inradius(const Domain& g) {
  return std::visit(Overloaded{
                        [](const Ball& b) { return b.radius; },
                        [](const Disc& d) { return d.radius; },
                        [](const Polydisc& p) { return *std::min_element(p.radii.begin(), p.radii.end()); },
                        // A centred ball of radius rho sits inside iff rho^2 <= r on both quadratic constraints.
                        [](const RealBidisc& r) { return std::sqrt(r.r); },
                        [](const Cylinder&) -> double { throw Unsupported("inradius of an unbounded cylinder"); },
                        [](const Product& p) {
                          double m = kInf;
                          for (const auto& f : p.factors) m = std::min(m, inradius(f));
                          return m;
                        },
                        [](const Transformed& t) { return inradius(*t.base); },
                    },
                    g.variant());
}

double outer_radius(const Domain& g) {
  return std::visit(Overloaded{
                        [](const Ball& b) { return b.radius; },
                        [](const Disc& d) { return d.radius; },
                        [](const Polydisc& p) {
                          double s = 0.0;
                          for (double r : p.radii) s += r * r;
                          return std::sqrt(s);
                        },
                        [](const RealBidisc& r) { return std::sqrt(2.0 * r.r); },
                        [](const Cylinder&) { return kInf; },
                        [](const Product& p) {
                          double s = 0.0;
                          for (const auto& f : p.factors) s += sq(outer_radius(f));
                          return std::sqrt(s);
                        },
                        [](const Transformed& t) { return outer_radius(*t.base); },
                    },
                    g.variant());
}

double axis_extent(const Domain& g, int k) {
  if (k < 0 || k >= g.dim()) throw InvalidInput("axis index out of range");
  return std::visit(Overloaded{
                        [](const Ball& b) { return b.radius; },
                        [](const Disc& d) { return d.radius; },
                        [&](const Polydisc& p) { return p.radii[k]; },
                        [](const RealBidisc& r) { return std::sqrt(2.0 * r.r); },
                        [&](const Cylinder& c) { return c.axis == k ? c.radius : kInf; },
                        [&](const Product& p) {
                          int off = 0;
                          for (const auto& f : p.factors) {
                            if (k < off + f.dim()) return axis_extent(f, k - off);
                            off += f.dim();
                          }
                          return kInf;
                        },
                        [](const Transformed& t) { return outer_radius(*t.base); },
                    },
                    g.variant());
}

CxVector BoundaryCircle::point(double angle) const { return std::cos(angle) * u + std::sin(angle) * v; }

double BoundaryCircle::distance(const CxVector& z) const {
  const double a = real_inner(z, u);
  const double b = real_inner(z, v);
  const CxVector in_plane = a * u + b * v;
  const double off_plane = (z - in_plane).squaredNorm();
  const double radial = std::hypot(a, b) - 1.0;
  return std::sqrt(off_plane + radial * radial);
}

CxVector AlgebraicCurve::evaluate(Cx t) const {
  const Cx inv = 1.0 / t;
  return 0.5 * (t + inv) * u + (t - inv) / Cx(0.0, 2.0) * v;
}

namespace {

bool is_unit(double r) { return std::abs(r - 1.0) <= 1e-12; }

void collect_circles(const Domain& g, int offset, int total, std::vector<BoundaryCircle>& out) {
  auto axis_circle = [&](int j) {
    BoundaryCircle c;
    c.u = CxVector::Zero(total);
    c.v = CxVector::Zero(total);
    c.u(offset + j) = 1.0;
    c.v(offset + j) = Cx(0.0, 1.0);
    out.push_back(c);
  };
  std::visit(Overloaded{
                 [&](const Ball&) { throw Unsupported("boundary circles of a ball form a whole sphere"); },
                 [&](const Disc& d) {
                   if (is_unit(d.radius)) axis_circle(0);
                 },
                 [&](const Polydisc& p) {
                   for (size_t j = 0; j < p.radii.size(); ++j)
                     if (is_unit(p.radii[j])) axis_circle(static_cast<int>(j));
                 },
                 [&](const RealBidisc& r) {
                   if (!is_unit(r.r)) return;
                   BoundaryCircle s1, s2;
                   s1.u = s1.v = s2.u = s2.v = CxVector::Zero(total);
                   // S1 lies in the (x_1, x_2) plane, S2 in the (y_1, y_2) plane.
                   s1.u(offset) = 1.0;
                   s1.v(offset + 1) = 1.0;
                   s2.u(offset) = Cx(0.0, 1.0);
                   s2.v(offset + 1) = Cx(0.0, 1.0);
                   out.push_back(s1);
                   out.push_back(s2);
                 },
                 [&](const Cylinder&) { throw Unsupported("boundary circles of an unbounded cylinder"); },
                 [&](const Product& p) {
                   int off = offset;
                   for (const auto& f : p.factors) {
                     collect_circles(f, off, total, out);
                     off += f.dim();
                   }
                 },
                 [&](const Transformed&) { throw Unsupported("nested transformed factor"); },
             },
             g.variant());
}

}  // namespace

std::vector<BoundaryCircle> boundary_circles(const Domain& g) {
  if (const auto* t = std::get_if<Transformed>(&g.variant())) {
    auto circles = boundary_circles(*t->base);
    for (auto& c : circles) {
      c.u = to_complex(t->matrix * to_real(c.u));
      c.v = to_complex(t->matrix * to_real(c.v));
    }
    return circles;
  }
  if (!is_unit(inradius(g))) throw Unsupported("boundary circles need a domain with inradius 1");
  std::vector<BoundaryCircle> out;
  collect_circles(g, 0, g.dim(), out);
  for (size_t j = 0; j < out.size(); ++j) out[j].label = static_cast<int>(j) + 1;
  return out;
}

AlgebraicCurve complexify(const BoundaryCircle& c) { return AlgebraicCurve{c.u, c.v}; }

double origin_passage_gap(const AlgebraicCurve& c) {
  ComplexLinearMap m(c.u.size(), 2);
  m.col(0) = c.u;
  m.col(1) = c.v;
  Eigen::JacobiSVD<ComplexLinearMap> svd(m);
  return svd.singularValues()(1);
}

bool passes_through_origin(const AlgebraicCurve& c, double tol) { return origin_passage_gap(c) <= tol; }

}  // namespace symrig
