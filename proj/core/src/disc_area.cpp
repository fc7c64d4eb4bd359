#include "symrig/disc_area.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "symrig/errors.hpp"
#include "symrig/parallel.hpp"

namespace symrig {

namespace {

// GSL tables are immutable after allocation; cache one per order.
const gsl_integration_glfixed_table* gl_table(int n) {
  static std::map<int, std::unique_ptr<gsl_integration_glfixed_table, void (*)(gsl_integration_glfixed_table*)>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second.get();
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n));
  if (!t) throw InvalidInput("Gauss-Legendre table allocation failed");
  return cache.emplace(n, decltype(cache)::mapped_type(t, gsl_integration_glfixed_table_free)).first->second.get();
}

void check_finite(const CxVector& v, const char* what) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag())) {
      throw NonFinite(std::string("non-finite ") + what + " in disc map");
    }
  }
}

}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw InvalidInput("Gauss-Legendre order must be positive");
  static std::once_flag quiet;
  std::call_once(quiet, [] { gsl_set_error_handler_off(); });
  const gsl_integration_glfixed_table* t = gl_table(n);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &nodes[i], &weights[i], t);
}

PolarGrid PolarGrid::gauss_legendre(int n_r, int n_theta) {
  if (n_r < 1 || n_theta < 1) throw InvalidInput("grid sizes must be positive");
  PolarGrid g;
  symrig::gauss_legendre(n_r, 0.0, 1.0, g.radii, g.radial_weights);
  symrig::gauss_legendre(n_theta, 0.0, 2.0 * kPi, g.angles, g.angular_weights);
  return g;
}

PolarGrid PolarGrid::uniform(int n_r, int n_theta) {
  if (n_r < 1 || n_theta < 1) throw InvalidInput("grid sizes must be positive");
  PolarGrid g;
  g.radii.resize(n_r);
  g.radial_weights.assign(n_r, 1.0 / n_r);
  for (int i = 0; i < n_r; ++i) g.radii[i] = (i + 0.5) / n_r;
  g.angles.resize(n_theta);
  g.angular_weights.assign(n_theta, 2.0 * kPi / n_theta);
  for (int j = 0; j < n_theta; ++j) g.angles[j] = 2.0 * kPi * j / n_theta;
  return g;
}

Cx PolarGrid::node(int i, int j) const { return std::polar(radii[i], angles[j]); }

double PolarGrid::area_weight(int i, int j) const { return radii[i] * radial_weights[i] * angular_weights[j]; }

ParamDisc ParamDisc::from_map(int dim, Map u, Derivatives du) {
  if (!u) throw InvalidInput("disc map is empty");
  ParamDisc p;
  p.dim_ = dim;
  p.map_ = std::move(u);
  p.derivs_ = std::move(du);
  return p;
}

ParamDisc ParamDisc::holomorphic(int dim, Map u, Map du_dzeta) {
  Derivatives d = [du_dzeta](Cx z) {
    CxVector d1 = du_dzeta(z);
    CxVector d2 = Cx(0.0, 1.0) * d1;
    return std::make_pair(std::move(d1), std::move(d2));
  };
  return from_map(dim, std::move(u), std::move(d));
}

ParamDisc ParamDisc::from_samples(GridSamples samples) {
  if (samples.values.size() != samples.grid.size() || samples.d_xi.size() != samples.grid.size() ||
      samples.d_eta.size() != samples.grid.size()) {
    throw InvalidInput("sample arrays do not match the grid");
  }
  ParamDisc p;
  p.dim_ = samples.values.empty() ? 0 : static_cast<int>(samples.values.front().size());
  p.samples_ = std::move(samples);
  return p;
}

CxVector ParamDisc::value(Cx zeta) const {
  if (!map_) throw Unsupported("disc is only known on its sample grid");
  CxVector v = map_(zeta);
  check_finite(v, "value");
  return v;
}

std::pair<CxVector, CxVector> ParamDisc::derivatives(Cx zeta) const {
  if (!map_) throw Unsupported("disc is only known on its sample grid");
  std::pair<CxVector, CxVector> d;
  if (derivs_) {
    d = derivs_(zeta);
  } else {
    const double h = 1e-5 * std::max(1.0, std::abs(zeta));
    d.first = (map_(zeta + h) - map_(zeta - h)) / (2.0 * h);
    d.second = (map_(zeta + Cx(0.0, h)) - map_(zeta - Cx(0.0, h))) / (2.0 * h);
  }
  check_finite(d.first, "derivative");
  check_finite(d.second, "derivative");
  return d;
}

GridSamples ParamDisc::sample(const PolarGrid& grid) const {
  GridSamples s;
  s.grid = grid;
  s.values.resize(grid.size());
  s.d_xi.resize(grid.size());
  s.d_eta.resize(grid.size());
  parallel_for(static_cast<std::size_t>(grid.n_r()), [&](std::size_t i) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      const Cx z = grid.node(static_cast<int>(i), j);
      const std::size_t k = grid.index(static_cast<int>(i), j);
      s.values[k] = value(z);
      auto d = derivatives(z);
      s.d_xi[k] = std::move(d.first);
      s.d_eta[k] = std::move(d.second);
    }
  });
  return s;
}

ParamDisc ParamDisc::precompose(std::function<Cx(Cx)> phi, std::function<Cx(Cx)> dphi) const {
  if (!map_) throw Unsupported("disc is only known on its sample grid");
  ParamDisc base = *this;
  Map u = [base, phi](Cx z) { return base.value(phi(z)); };
  Derivatives du = [base, phi, dphi](Cx z) {
    const auto d = base.derivatives(phi(z));
    const Cx p = dphi(z);
    CxVector dx = d.first * p.real() + d.second * p.imag();
    CxVector dy = -d.first * p.imag() + d.second * p.real();
    return std::make_pair(std::move(dx), std::move(dy));
  };
  return from_map(dim_, std::move(u), std::move(du));
}

double symplectic_density(const CxVector& d_xi, const CxVector& d_eta) {
  return (d_xi.conjugate().cwiseProduct(d_eta)).sum().imag();
}

AreaReport symplectic_area(const GridSamples& s) {
  AreaReport rep;
  const int n = s.values.empty() ? 0 : static_cast<int>(s.values.front().size());
  rep.per_component.assign(n, 0.0);
  for (int i = 0; i < s.grid.n_r(); ++i) {
    for (int j = 0; j < s.grid.n_theta(); ++j) {
      const std::size_t k = s.grid.index(i, j);
      const double w = s.grid.area_weight(i, j);
      for (int c = 0; c < n; ++c) rep.per_component[c] += w * (std::conj(s.d_xi[k][c]) * s.d_eta[k][c]).imag();
    }
  }
  for (double a : rep.per_component) rep.total += a;
  return rep;
}

AreaReport symplectic_area(const ParamDisc& u, const QuadratureConfig& quad) {
  if (!u.has_map()) {
    if (!u.samples()) throw InvalidInput("disc has neither a map nor samples");
    return symplectic_area(*u.samples());
  }
  AreaReport rep = symplectic_area(u.sample(PolarGrid::gauss_legendre(quad.n_r, quad.n_theta)));
  if (quad.error_estimate) {
    const AreaReport coarse =
        symplectic_area(u.sample(PolarGrid::gauss_legendre(std::max(1, quad.n_r / 2), std::max(1, quad.n_theta / 2))));
    rep.error_estimate = std::abs(rep.total - coarse.total);
  }
  return rep;
}

ClipResult clip_area(const ParamDisc& u, const Domain& g, const QuadratureConfig& quad, const ClipOptions& options) {
  if (!u.has_map()) throw Unsupported("clipped area needs a callable disc map");
  if (u.dim() != g.dim()) throw InvalidInput("disc and domain dimensions differ");
  const int nt = quad.n_theta;
  const int m = quad.crossing_samples;
  if (nt < 1 || m < 1 || quad.segment_order < 1) throw InvalidInput("quadrature sizes must be positive");
  ClipResult res;
  res.angles.resize(nt);
  res.angular_weights.assign(nt, 2.0 * kPi / nt);
  for (int j = 0; j < nt; ++j) res.angles[j] = 2.0 * kPi * (j + 0.5) / nt;

  std::vector<std::vector<RaySegment>> all(nt);
  parallel_for(static_cast<std::size_t>(nt), [&](std::size_t j) {
    const Cx dir = std::polar(1.0, res.angles[j]);
    auto inside = [&](double r) { return contains(g, u.value(r * dir)); };
    auto crossing = [&](double a, double b, bool a_in) {
      for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
        const double c = 0.5 * (a + b);
        (inside(c) == a_in ? a : b) = c;
      }
      return 0.5 * (a + b);
    };
    std::vector<RaySegment>& segs = all[j];
    bool prev = inside(0.0);
    double start = 0.0;
    for (int k = 1; k <= m; ++k) {
      const double r0 = static_cast<double>(k - 1) / m;
      const double r1 = static_cast<double>(k) / m;
      const bool cur = inside(r1);
      if (cur != prev) {
        const double c = crossing(r0, r1, prev);
        if (prev) segs.push_back({start, c});
        else start = c;
        prev = cur;
      }
    }
    if (prev) segs.push_back({start, 1.0});
  });

  std::vector<std::vector<char>> keep(nt);
  for (int j = 0; j < nt; ++j) keep[j].assign(all[j].size(), options.origin_component ? 0 : 1);
  if (options.origin_component) {
    std::vector<std::pair<int, int>> stack;
    for (int j = 0; j < nt; ++j) {
      if (!all[j].empty() && all[j].front().begin == 0.0) {
        keep[j][0] = 1;
        stack.emplace_back(j, 0);
      }
    }
    while (!stack.empty()) {
      const auto [j, s] = stack.back();
      stack.pop_back();
      const RaySegment& a = all[j][s];
      for (int dj : {-1, 1}) {
        const int jn = (j + dj + nt) % nt;
        for (std::size_t t = 0; t < all[jn].size(); ++t) {
          const RaySegment& b = all[jn][t];
          if (!keep[jn][t] && b.begin <= a.end && a.begin <= b.end) {
            keep[jn][t] = 1;
            stack.emplace_back(jn, static_cast<int>(t));
          }
        }
      }
    }
  }

  const int n = u.dim();
  std::vector<std::vector<double>> ray_parts(nt, std::vector<double>(n, 0.0));
  res.segments.resize(nt);
  for (int j = 0; j < nt; ++j) {
    for (std::size_t s = 0; s < all[j].size(); ++s) {
      if (keep[j][s]) res.segments[j].push_back(all[j][s]);
    }
  }
  parallel_for(static_cast<std::size_t>(nt), [&](std::size_t j) {
    const Cx dir = std::polar(1.0, res.angles[j]);
    std::vector<double> nodes, weights;
    for (const RaySegment& seg : res.segments[j]) {
      gauss_legendre(quad.segment_order, seg.begin, seg.end, nodes, weights);
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        const auto d = u.derivatives(nodes[q] * dir);
        for (int c = 0; c < n; ++c) ray_parts[j][c] += weights[q] * nodes[q] * (std::conj(d.first[c]) * d.second[c]).imag();
      }
    }
  });
  res.per_component.assign(n, 0.0);
  for (int j = 0; j < nt; ++j) {
    for (int c = 0; c < n; ++c) res.per_component[c] += res.angular_weights[j] * ray_parts[j][c];
    for (const RaySegment& seg : res.segments[j]) {
      if (seg.end >= 1.0) res.reaches_parameter_boundary = true;
    }
  }
  for (double a : res.per_component) res.area += a;
  return res;
}

double clipped_area(const ParamDisc& u, const Domain& g, const QuadratureConfig& quad) {
  return clip_area(u, g, quad).area;
}

double holomorphy_residual(const GridSamples& s, const MatrixField& f) {
  double sum = 0.0;
  for (int i = 0; i < s.grid.n_r(); ++i) {
    for (int j = 0; j < s.grid.n_theta(); ++j) {
      const std::size_t k = s.grid.index(i, j);
      const CxVector dz = 0.5 * (s.d_xi[k] - Cx(0.0, 1.0) * s.d_eta[k]);
      const CxVector dzb = 0.5 * (s.d_xi[k] + Cx(0.0, 1.0) * s.d_eta[k]);
      const CxVector r = dzb - f(s.values[k]) * dz.conjugate();
      sum += s.grid.area_weight(i, j) * r.squaredNorm();
    }
  }
  return std::sqrt(sum);
}

double holomorphy_residual(const ParamDisc& u, const MatrixField& f, const QuadratureConfig& quad) {
  if (!u.has_map()) {
    if (!u.samples()) throw InvalidInput("disc has neither a map nor samples");
    return holomorphy_residual(*u.samples(), f);
  }
  return holomorphy_residual(u.sample(PolarGrid::gauss_legendre(quad.n_r, quad.n_theta)), f);
}

void write_grid_csv(const GridSamples& s, std::ostream& out) {
  const int n = s.values.empty() ? 0 : static_cast<int>(s.values.front().size());
  out << "xi,eta";
  for (int c = 1; c <= n; ++c) out << ",re_" << c << ",im_" << c;
  out << '\n';
  out.precision(17);
  for (int i = 0; i < s.grid.n_r(); ++i) {
    for (int j = 0; j < s.grid.n_theta(); ++j) {
      const Cx z = s.grid.node(i, j);
      const CxVector& v = s.values[s.grid.index(i, j)];
      out << z.real() << ',' << z.imag();
      for (int c = 0; c < n; ++c) out << ',' << v[c].real() << ',' << v[c].imag();
      out << '\n';
    }
  }
}

}  // namespace symrig
