#include "symrig/acs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "symrig/errors.hpp"
#include "symrig/linear_geometry.hpp"
#include "symrig/nelder_mead.hpp"

namespace symrig {

namespace {

ComplexLinearMap complex_blocks(const RealLinearMap& t) {
  const Eigen::Index n = t.rows() / 2;
  ComplexLinearMap c(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      c(j, k) = Cx(0.5 * (t(2 * j, 2 * k) + t(2 * j + 1, 2 * k + 1)),
                   0.5 * (t(2 * j + 1, 2 * k) - t(2 * j, 2 * k + 1)));
    }
  }
  return c;
}

// C-infinity step from 0 (t <= 0) to 1 (t >= 1).
double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace

PointStructure::PointStructure(RealLinearMap j, double tol) : j_(std::move(j)) {
  if (j_.rows() != j_.cols() || j_.rows() % 2 != 0 || j_.rows() == 0) {
    throw InvalidInput("structure must be a square matrix of even size");
  }
  if (!j_.allFinite()) throw InvalidInput("structure has non-finite entries");
  const RealLinearMap id = RealLinearMap::Identity(j_.rows(), j_.cols());
  if ((j_ * j_ + id).norm() > tol * std::max(1.0, j_.squaredNorm())) {
    throw InvalidInput("matrix does not square to -I");
  }
}

AntilinearPart antilinear_part(const RealLinearMap& j, double tol) {
  const int n = static_cast<int>(j.rows() / 2);
  const RealLinearMap jst = standard_structure(n);
  const RealLinearMap sum = jst + j;
  Eigen::PartialPivLU<RealLinearMap> lu(sum);
  if (!(std::abs(lu.determinant()) > tol)) throw SingularStructure("J_st + J is singular");
  AntilinearPart out;
  out.q = lu.solve(jst - j);
  out.a = complex_blocks(out.q * conjugation_matrix(n));
  return out;
}

AntilinearPart antilinear_part(const PointStructure& j, double tol) { return antilinear_part(j.matrix(), tol); }

RealLinearMap structure_matrix_unchecked(const ComplexLinearMap& a) {
  if (a.rows() != a.cols()) throw InvalidInput("A must be square");
  const int n = static_cast<int>(a.rows());
  const RealLinearMap q = realify(a) * conjugation_matrix(n);
  const RealLinearMap id = RealLinearMap::Identity(2 * n, 2 * n);
  Eigen::PartialPivLU<RealLinearMap> lu((id + q).transpose());
  if (!(std::abs(lu.determinant()) > 1e-14)) throw SingularStructure("I + Q is singular");
  // J = J_st (I - Q)(I + Q)^{-1}, solved as a right division.
  const RealLinearMap lhs = standard_structure(n) * (id - q);
  return lu.solve(lhs.transpose()).transpose();
}

PointStructure structure_from_matrix(const ComplexLinearMap& a) {
  if (!a.allFinite()) throw InvalidInput("A has non-finite entries");
  if (operator_norm(a) >= 1.0) throw NotTamed("||A|| >= 1: structure would not be tamed");
  return PointStructure(structure_matrix_unchecked(a), 1e-9);
}

double operator_norm(const ComplexLinearMap& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealLinearMap> svd(realify(a));
  return svd.singularValues()(0);
}

double omega_st(const CxVector& x, const CxVector& y) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) s += x(j).real() * y(j).imag() - x(j).imag() * y(j).real();
  return s;
}

double canonical_metric(const PointStructure& j, const CxVector& x, const CxVector& y) {
  const CxVector jx = to_complex(j.matrix() * to_real(x));
  const CxVector jy = to_complex(j.matrix() * to_real(y));
  return 0.5 * (omega_st(x, jy) + omega_st(y, jx));
}

double min_taming_ratio(const RealLinearMap& j) {
  const int n = static_cast<int>(j.rows() / 2);
  const RealLinearMap m = symplectic_form_matrix(n) * j;
  const RealLinearMap s = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RealLinearMap> eig(s);
  return eig.eigenvalues()(0);
}

double bump_profile(double s) {
  s = std::abs(s);
  if (s >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

MatrixField::MatrixField(int dim, Eval eval, std::optional<Domain> support, double norm_bound,
                         nlohmann::json descriptor)
    : dim_(dim),
      eval_(std::move(eval)),
      support_(std::move(support)),
      norm_bound_(norm_bound),
      descriptor_(std::move(descriptor)) {
  if (dim_ < 1) throw InvalidInput("field dimension must be >= 1");
  if (support_ && support_->dim() != dim_) throw InvalidInput("support dimension mismatch");
  if (!(norm_bound_ >= 0.0)) throw InvalidInput("norm bound must be nonnegative");
}

MatrixField MatrixField::zero(int dim) {
  return MatrixField(
      dim, [dim](const CxVector&) { return ComplexLinearMap::Zero(dim, dim).eval(); }, std::nullopt, 0.0,
      {{"kind", "constant"}, {"dim", dim}, {"zero", true}});
}

MatrixField MatrixField::constant(const ComplexLinearMap& a, std::optional<Domain> support) {
  if (a.rows() != a.cols()) throw InvalidInput("A must be square");
  nlohmann::json d = {{"kind", "constant"}, {"dim", a.rows()}};
  return MatrixField(
      static_cast<int>(a.rows()), [a](const CxVector&) { return a; }, std::move(support), operator_norm(a),
      std::move(d));
}

MatrixField MatrixField::bump(const ComplexLinearMap& direction, double amplitude, const CxVector& center,
                              double radius) {
  const int n = static_cast<int>(direction.rows());
  if (direction.cols() != n || center.size() != n) throw InvalidInput("bump field dimension mismatch");
  if (!(radius > 0.0)) throw InvalidInput("bump radius must be positive");
  auto eval = [direction, amplitude, center, radius](const CxVector& z) -> ComplexLinearMap {
    const double s = (z - center).norm() / radius;
    return (amplitude * bump_profile(s)) * direction;
  };
  const Domain support = Domain::ball(center.norm() + radius, n);
  return MatrixField(n, eval, support, std::abs(amplitude) * operator_norm(direction),
                     {{"kind", "bump"}, {"dim", n}, {"amplitude", amplitude}, {"radius", radius}});
}

ComplexLinearMap MatrixField::operator()(const CxVector& z) const {
  if (z.size() != dim_) throw InvalidInput("field evaluated at point of wrong dimension");
  if (support_ && !contains(*support_, z)) return ComplexLinearMap::Zero(dim_, dim_);
  return eval_(z);
}

MatrixField MatrixField::with_norm_bound(double bound) const {
  MatrixField copy = *this;
  if (!(bound >= 0.0)) throw InvalidInput("norm bound must be nonnegative");
  copy.norm_bound_ = bound;
  return copy;
}

MatrixField MatrixField::with_descriptor(nlohmann::json descriptor) const {
  MatrixField copy = *this;
  copy.descriptor_ = std::move(descriptor);
  return copy;
}

TamingReport is_tamed(const MatrixField& f, const std::vector<CxVector>& samples, int probes,
                      std::uint64_t seed) {
  if (samples.empty()) throw InvalidInput("taming check needs at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = f.dim();
  std::vector<RealVector> dirs;
  for (int p = 0; p < probes; ++p) {
    RealVector u(2 * n);
    for (int k = 0; k < 2 * n; ++k) u(k) = normal(rng);
    dirs.push_back(u / u.norm());
  }
  const RealLinearMap omega = symplectic_form_matrix(n);

  TamingReport report;
  for (const auto& z : samples) {
    const ComplexLinearMap a = f(z);
    const double norm = operator_norm(a);
    report.sup_norm = std::max(report.sup_norm, norm);
    if (std::abs(1.0 - norm) <= 1e-6) continue;
    bool all_positive = true;
    try {
      const RealLinearMap j = structure_matrix_unchecked(a);
      const RealLinearMap m = omega * j;
      // Random probes plus the extremal direction of the symmetric part of Omega J.
      Eigen::SelfAdjointEigenSolver<RealLinearMap> eig(0.5 * (m + m.transpose()));
      std::vector<RealVector> local = dirs;
      local.push_back(eig.eigenvectors().col(0));
      for (const auto& u : local) {
        if (!(u.dot(m * u) > 0.0)) {
          all_positive = false;
          break;
        }
      }
    } catch (const SingularStructure&) {
      all_positive = false;
    }
    if (all_positive != (norm < 1.0)) {
      report.probes_consistent = false;
      ++report.inconsistent_samples;
    }
  }
  report.tamed = report.sup_norm < 1.0;
  return report;
}

namespace {

struct CutoffShape {
  enum Kind { PolyRadii, BallRadius } kind;
  std::vector<double> radii;  // PolyRadii
  double radius = 0.0;        // BallRadius
};

CutoffShape cutoff_shape(const Domain& inner) {
  if (const auto* p = std::get_if<Polydisc>(&inner.variant())) return {CutoffShape::PolyRadii, p->radii, 0.0};
  if (const auto* d = std::get_if<Disc>(&inner.variant())) return {CutoffShape::PolyRadii, {d->radius}, 0.0};
  if (const auto* b = std::get_if<Ball>(&inner.variant())) return {CutoffShape::BallRadius, {}, b->radius};
  throw InvalidGeometry("cut-off inner region must be a disc, polydisc or ball");
}

bool flatten_polyradii(const Domain& g, std::vector<double>& out) {
  if (const auto* p = std::get_if<Polydisc>(&g.variant())) {
    out.insert(out.end(), p->radii.begin(), p->radii.end());
    return true;
  }
  if (const auto* d = std::get_if<Disc>(&g.variant())) {
    out.push_back(d->radius);
    return true;
  }
  if (const auto* pr = std::get_if<Product>(&g.variant())) {
    for (const auto& f : pr->factors)
      if (!flatten_polyradii(f, out)) return false;
    return true;
  }
  return false;
}

/// Does the closed `width`-enlargement of `inner` stay inside the closure of `support`?
bool enlargement_fits(const CutoffShape& inner, double width, const Domain& support, int n) {
  const double eps = 1e-12;
  std::vector<double> outer;
  if (flatten_polyradii(support, outer)) {
    for (int j = 0; j < n; ++j) {
      const double reach = inner.kind == CutoffShape::PolyRadii ? inner.radii[j] + width : inner.radius + width;
      if (reach > outer[j] + eps) return false;
    }
    return true;
  }
  if (const auto* b = std::get_if<Ball>(&support.variant())) {
    double reach = 0.0;
    if (inner.kind == CutoffShape::BallRadius) {
      reach = inner.radius + width;
    } else {
      for (double r : inner.radii) reach += (r + width) * (r + width);
      reach = std::sqrt(reach);
    }
    return reach <= b->radius + eps;
  }
  if (const auto* c = std::get_if<Cylinder>(&support.variant())) {
    const double reach =
        inner.kind == CutoffShape::PolyRadii ? inner.radii[c->axis] + width : inner.radius + width;
    return reach <= c->radius + eps;
  }
  throw InvalidGeometry("cannot compare cut-off region with support " + support.describe());
}

}  // namespace

MatrixField truncate_field(const MatrixField& f, const Domain& inner, double width) {
  if (!(width > 0.0)) throw InvalidGeometry("cut-off width must be positive");
  if (inner.dim() != f.dim()) throw InvalidGeometry("cut-off region dimension mismatch");
  const CutoffShape shape = cutoff_shape(inner);
  if (f.support() && !enlargement_fits(shape, width, *f.support(), f.dim())) {
    throw InvalidGeometry("cut-off width exceeds the gap between inner region and support");
  }

  auto chi = [shape, width](const CxVector& z) {
    double dist = 0.0;
    if (shape.kind == CutoffShape::PolyRadii) {
      for (Eigen::Index j = 0; j < z.size(); ++j) dist = std::max(dist, std::abs(z(j)) - shape.radii[j]);
    } else {
      dist = z.norm() - shape.radius;
    }
    return smoothstep(1.0 - std::max(dist, 0.0) / width);
  };
  auto eval = [f, chi](const CxVector& z) -> ComplexLinearMap {
    const double c = chi(z);
    if (c <= 0.0) return ComplexLinearMap::Zero(f.dim(), f.dim());
    return c * f(z);
  };

  Domain new_support = shape.kind == CutoffShape::PolyRadii
                           ? [&] {
                               std::vector<double> r = shape.radii;
                               for (double& x : r) x += width;
                               return Domain::polydisc(r);
                             }()
                           : Domain::ball(shape.radius + width, f.dim());
  nlohmann::json d = {{"kind", "truncated"}, {"base", f.descriptor()}, {"width", width}};
  return MatrixField(f.dim(), eval, std::move(new_support), f.norm_bound(), std::move(d));
}

JacobianField JacobianField::linear(const RealLinearMap& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) throw InvalidInput("linear map must be 2n x 2n");
  Eigen::PartialPivLU<RealLinearMap> lu(m);
  if (!(std::abs(lu.determinant()) > 1e-14)) throw InvalidInput("linear map is singular");
  const RealLinearMap inv = lu.inverse();
  JacobianField psi;
  psi.dim = static_cast<int>(m.rows() / 2);
  psi.forward = [m](const CxVector& z) { return to_complex(m * to_real(z)); };
  psi.inverse = [inv](const CxVector& w) { return to_complex(inv * to_real(w)); };
  psi.jacobian = [m](const CxVector&) { return m; };
  psi.descriptor = {{"type", "linear"}};
  return psi;
}

namespace {

// b(t) = exp(1 - 1/(1 - t^2)) with first and second derivatives, t >= 0.
struct Profile {
  double v, d1, d2;
};

Profile profile(double t) {
  if (t >= 1.0) return {0.0, 0.0, 0.0};
  const double q = 1.0 - t * t;
  const double b = std::exp(1.0 - 1.0 / q);
  const double d1 = -2.0 * t * b / (q * q);
  const double d2 = -2.0 * b / (q * q) + 4.0 * t * t * b / (q * q * q * q) - 8.0 * t * t * b / (q * q * q);
  return {b, d1, d2};
}

struct TwistData {
  Eigen::VectorXd phase;  // dH/ds_j
  Eigen::MatrixXd hess;   // d2H/ds_j ds_k
};

TwistData twist_data(const CxVector& z, double amplitude, double radius) {
  const Eigen::Index n = z.size();
  const double r2 = radius * radius;
  std::vector<Profile> p(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Profile q = profile(std::norm(z(j)) / r2);
    p[j] = {q.v, q.d1 / r2, q.d2 / (r2 * r2)};
  }
  TwistData out{Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    double g = amplitude * p[j].d1;
    for (Eigen::Index l = 0; l < n; ++l)
      if (l != j) g *= p[l].v;
    out.phase(j) = g;
    for (Eigen::Index k = 0; k < n; ++k) {
      double h = amplitude * (j == k ? p[j].d2 : p[j].d1 * p[k].d1);
      for (Eigen::Index l = 0; l < n; ++l)
        if (l != j && l != k) h *= p[l].v;
      out.hess(j, k) = h;
    }
  }
  return out;
}

}  // namespace

JacobianField JacobianField::twist(int dim, double amplitude, double radius) {
  if (dim < 1 || !(radius > 0.0)) throw InvalidInput("twist map needs dim >= 1 and positive radius");
  JacobianField psi;
  psi.dim = dim;
  psi.forward = [amplitude, radius](const CxVector& z) {
    const TwistData t = twist_data(z, amplitude, radius);
    CxVector w(z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) w(j) = z(j) * std::polar(1.0, t.phase(j));
    return w;
  };
  // |z_j| is preserved, so the phases can be read off the image point.
  psi.inverse = [amplitude, radius](const CxVector& w) {
    const TwistData t = twist_data(w, amplitude, radius);
    CxVector z(w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j) z(j) = w(j) * std::polar(1.0, -t.phase(j));
    return z;
  };
  psi.jacobian = [amplitude, radius](const CxVector& z) {
    const Eigen::Index n = z.size();
    const TwistData t = twist_data(z, amplitude, radius);
    RealLinearMap d = RealLinearMap::Zero(2 * n, 2 * n);
    const Cx i(0.0, 1.0);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Cx rot = std::polar(1.0, t.phase(j));
      for (Eigen::Index k = 0; k < n; ++k) {
        const double delta = j == k ? 1.0 : 0.0;
        const Cx dx = rot * (delta + i * z(j) * t.hess(j, k) * 2.0 * z(k).real());
        const Cx dy = rot * (i * delta + i * z(j) * t.hess(j, k) * 2.0 * z(k).imag());
        d(2 * j, 2 * k) = dx.real();
        d(2 * j + 1, 2 * k) = dx.imag();
        d(2 * j, 2 * k + 1) = dy.real();
        d(2 * j + 1, 2 * k + 1) = dy.imag();
      }
    }
    return d;
  };
  psi.support = Domain::polydisc(std::vector<double>(dim, radius));
  psi.descriptor = {{"type", "twist"}, {"amplitude", amplitude}, {"radius", radius}};
  return psi;
}

bool is_symplectic(const RealLinearMap& d, double tol) {
  const int n = static_cast<int>(d.rows() / 2);
  const RealLinearMap omega = symplectic_form_matrix(n);
  return (d.transpose() * omega * d - omega).norm() <= tol;
}

std::vector<CxVector> lattice_samples(int dim, double extent, int per_axis) {
  if (per_axis < 1) throw InvalidInput("lattice needs at least one node per axis");
  const int axes = 2 * dim;
  std::vector<CxVector> out;
  std::vector<int> idx(axes, 0);
  auto coord = [&](int i) {
    return per_axis == 1 ? 0.0 : -extent + 2.0 * extent * i / (per_axis - 1);
  };
  while (true) {
    RealVector v(axes);
    for (int a = 0; a < axes; ++a) v(a) = coord(idx[a]);
    out.push_back(to_complex(v));
    int a = 0;
    while (a < axes && ++idx[a] == per_axis) idx[a++] = 0;
    if (a == axes) break;
  }
  return out;
}

MatrixField pushforward(const JacobianField& psi, std::optional<std::vector<CxVector>> samples) {
  if (!psi.forward || !psi.inverse || !psi.jacobian) throw InvalidInput("Jacobian field is incomplete");
  const int n = psi.dim;
  auto eval = [psi, n](const CxVector& w) -> ComplexLinearMap {
    const CxVector z = psi.inverse(w);
    const RealLinearMap d = psi.jacobian(z);
    Eigen::PartialPivLU<RealLinearMap> lu(d);
    if (!(std::abs(lu.determinant()) > 1e-14)) throw SingularStructure("singular Jacobian sample");
    const RealLinearMap j = d * standard_structure(n) * lu.inverse();
    return antilinear_part(j).a;
  };

  std::vector<CxVector> pts;
  if (samples) {
    pts = std::move(*samples);
  } else {
    const double extent = psi.support ? outer_radius(*psi.support) : 1.0;
    pts = lattice_samples(n, extent, n <= 2 ? 9 : 5);
  }
  std::vector<std::pair<double, std::size_t>> norms(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) norms[i] = {operator_norm(eval(psi.forward(pts[i]))), i};
  double bound = 0.0;
  for (const auto& [v, i] : norms) bound = std::max(bound, v);
  if (!samples) {
    // Local ascent from the largest lattice values; lattices alone miss narrow peaks.
    const std::size_t seeds = std::min<std::size_t>(8, norms.size());
    std::partial_sort(norms.begin(), norms.begin() + static_cast<std::ptrdiff_t>(seeds), norms.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    const double extent = psi.support ? outer_radius(*psi.support) : 1.0;
    auto negated = [&](const std::vector<double>& x) {
      const CxVector z = to_complex(Eigen::Map<const RealVector>(x.data(), static_cast<Eigen::Index>(x.size())));
      if (psi.support && !contains(*psi.support, z)) return 0.0;
      return -operator_norm(eval(psi.forward(z)));
    };
    for (std::size_t s = 0; s < seeds; ++s) {
      const RealVector x0 = to_real(pts[norms[s].second]);
      const MinimizeResult r =
          nelder_mead(negated, std::vector<double>(x0.data(), x0.data() + x0.size()), 0.1 * extent, 400, 1e-8);
      bound = std::max(bound, -r.value);
    }
  }

  nlohmann::json d = {{"kind", "pushforward"}, {"dim", n}, {"map", psi.descriptor}};
  return MatrixField(n, eval, psi.support, bound, std::move(d));
}

}  // namespace symrig
