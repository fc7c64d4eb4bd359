#include "symrig/holo_radius.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "symrig/errors.hpp"
#include "symrig/linear_geometry.hpp"
#include "symrig/nelder_mead.hpp"
#include "symrig/parallel.hpp"

namespace symrig {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kMaxParameterRadius = 1048576.0;  // 2^20

ParamDisc scaled_disc(const AnalyticCandidate& x, double r) {
  return ParamDisc::holomorphic(
      x.dim, [x, r](Cx z) { return x.point(r * z); }, [x, r](Cx z) { return (r * x.derivative(r * z)).eval(); });
}

// First radius along the ray where the candidate leaves G, or 1 if it never does.
double first_exit(const ParamDisc& u, const Domain& g, double angle, int samples) {
  const Cx dir = std::polar(1.0, angle);
  double prev = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double r = static_cast<double>(k) / samples;
    if (!contains(g, u.value(r * dir))) {
      double a = prev, b = r;
      for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
        const double c = 0.5 * (a + b);
        (contains(g, u.value(c * dir)) ? a : b) = c;
      }
      return 0.5 * (a + b);
    }
    prev = r;
  }
  return 1.0;
}

}  // namespace

double lelong_lower_bound(const Domain& g) {
  if (const auto* c = std::get_if<Cylinder>(&g.variant())) return c->radius;
  return inradius(g);
}

std::string to_string(CandidateKind kind) {
  switch (kind) {
    case CandidateKind::Line:
      return "line";
    case CandidateKind::PolynomialGraph:
      return "polynomial_graph";
    case CandidateKind::RationalCircle:
      return "rational_circle";
  }
  return "unknown";
}

CxVector AnalyticCandidate::point(Cx w) const {
  CxVector z = CxVector::Zero(dim);
  for (int j = 0; j < dim; ++j) {
    if (j == axis) continue;
    Cx acc = 0.0;
    for (int d = degree(); d >= 1; --d) acc = (acc + coeffs(j, d - 1)) * w;
    z[j] = acc;
  }
  z[axis] = w;
  return z;
}

CxVector AnalyticCandidate::derivative(Cx w) const {
  CxVector z = CxVector::Zero(dim);
  for (int j = 0; j < dim; ++j) {
    if (j == axis) continue;
    Cx acc = 0.0;
    for (int d = degree(); d >= 1; --d) acc = acc * w + static_cast<double>(d) * coeffs(j, d - 1);
    z[j] = acc;
  }
  z[axis] = 1.0;
  return z;
}

CxVector AnalyticCandidate::tangent() const {
  CxVector t = derivative(0.0);
  return t / t.norm();
}

std::string AnalyticCandidate::describe() const {
  std::ostringstream os;
  os << to_string(kind) << " over z" << axis + 1;
  if (kind == CandidateKind::PolynomialGraph) os << " of degree " << degree();
  return os.str();
}

AnalyticCandidate AnalyticCandidate::line(const CxVector& direction) {
  Eigen::Index k = 0;
  if (direction.size() == 0 || direction.cwiseAbs().maxCoeff(&k) == 0.0) throw InvalidInput("line direction is zero");
  AnalyticCandidate x;
  x.kind = CandidateKind::Line;
  x.dim = static_cast<int>(direction.size());
  x.axis = static_cast<int>(k);
  x.coeffs = direction / direction[k];
  x.coeffs(k, 0) = 0.0;
  return x;
}

AnalyticCandidate AnalyticCandidate::graph(int dim, int axis, const ComplexLinearMap& coeffs) {
  if (axis < 0 || axis >= dim || coeffs.rows() != dim || coeffs.cols() < 1) {
    throw InvalidInput("graph coefficients must be dim x degree with a valid axis");
  }
  AnalyticCandidate x;
  x.kind = coeffs.cols() == 1 ? CandidateKind::Line : CandidateKind::PolynomialGraph;
  x.dim = dim;
  x.axis = axis;
  x.coeffs = coeffs;
  x.coeffs.row(axis).setZero();
  return x;
}

AnalyticCandidate AnalyticCandidate::from_curve(const AlgebraicCurve& curve, double tol) {
  if (!passes_through_origin(curve, tol)) throw InvalidInput("curve does not pass through the origin");
  AnalyticCandidate x = line(curve.u.norm() > tol ? curve.u : curve.v);
  x.kind = CandidateKind::RationalCircle;
  return x;
}

std::vector<double> AnalyticCandidate::parameters() const {
  std::vector<double> p;
  for (int j = 0; j < dim; ++j) {
    if (j == axis) continue;
    for (int d = 0; d < degree(); ++d) {
      p.push_back(coeffs(j, d).real());
      p.push_back(coeffs(j, d).imag());
    }
  }
  return p;
}

AnalyticCandidate AnalyticCandidate::with_parameters(const std::vector<double>& p) const {
  AnalyticCandidate x = *this;
  if (p.size() != static_cast<std::size_t>(2 * (dim - 1) * degree())) throw InvalidInput("parameter count mismatch");
  std::size_t k = 0;
  for (int j = 0; j < dim; ++j) {
    if (j == axis) continue;
    for (int d = 0; d < degree(); ++d, k += 2) x.coeffs(j, d) = Cx(p[k], p[k + 1]);
  }
  return x;
}

std::string CandidateFamily::describe() const {
  std::ostringstream os;
  os << to_string(kind) << " over z" << axis + 1;
  if (kind == CandidateKind::PolynomialGraph) os << ", degree <= " << degree;
  return os.str();
}

std::vector<CandidateFamily> default_families(int dim, int graph_degree) {
  std::vector<CandidateFamily> out;
  for (int k = 0; k < dim; ++k) out.push_back({CandidateKind::Line, k, 1});
  if (graph_degree > 1) {
    for (int k = 0; k < dim; ++k) out.push_back({CandidateKind::PolynomialGraph, k, graph_degree});
  }
  return out;
}

CandidateArea candidate_area_report(const AnalyticCandidate& x, const Domain& g, const QuadratureConfig& quad,
                                    int boundary_samples) {
  if (x.dim != g.dim()) throw InvalidInput("candidate and domain dimensions differ");
  if (!contains(g, CxVector::Zero(g.dim()))) throw InvalidInput("domain does not contain the origin");
  const double extent = axis_extent(g, x.axis);
  double r = std::isfinite(extent) ? extent * (1.0 + 1e-3) : 1.0;
  CandidateArea out;
  for (;;) {
    const ParamDisc u = scaled_disc(x, r);
    const ClipResult clip = clip_area(u, g, quad, {.origin_component = true});
    if (!clip.reaches_parameter_boundary) {
      out.area = clip.area;
      out.parameter_radius = r;
      for (int m = 0; m < boundary_samples; ++m) {
        const double angle = 2.0 * kPi * m / boundary_samples;
        out.boundary.push_back(u.value(std::polar(first_exit(u, g, angle, quad.crossing_samples), angle)));
      }
      return out;
    }
    r *= 2.0;
    if (r > kMaxParameterRadius) throw UnboundedCandidate("candidate does not leave the domain: " + x.describe());
  }
}

double candidate_area(const AnalyticCandidate& x, const Domain& g, const QuadratureConfig& quad) {
  return candidate_area_report(x, g, quad).area;
}

RadiusEstimate estimate_rh(const Domain& g, const std::vector<CandidateFamily>& families, const OptimizerConfig& opt) {
  if (families.empty()) throw InvalidInput("no candidate families given");
  if (!contains(g, CxVector::Zero(g.dim()))) throw InvalidInput("domain does not contain the origin");
  const int n = g.dim();
  if (n < 2) throw InvalidInput("holomorphic radius search needs complex dimension >= 2");

  RadiusEstimate est;
  est.lower = lelong_lower_bound(g);
  est.best_area = std::numeric_limits<double>::infinity();
  std::atomic<std::size_t> evaluated{0};

  auto objective_for = [&](const AnalyticCandidate& base) {
    return [&, base](const std::vector<double>& p) {
      ++evaluated;
      try {
        return candidate_area(base.with_parameters(p), g, opt.search_quad);
      } catch (const UnboundedCandidate&) {
        return std::numeric_limits<double>::infinity();
      }
    };
  };

  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    const CandidateFamily& fam = families[fi];
    if (fam.axis < 0 || fam.axis >= n || fam.degree < 1) throw InvalidInput("invalid candidate family");
    const int degree = fam.kind == CandidateKind::PolynomialGraph ? fam.degree : 1;
    AnalyticCandidate base = AnalyticCandidate::graph(n, fam.axis, ComplexLinearMap::Zero(n, degree));
    base.kind = fam.kind;
    est.families.push_back(fam.describe());
    const auto objective = objective_for(base);

    // Lattice over the linear coefficient of each non-axis coordinate in turn.
    std::vector<std::vector<double>> lattice;
    const int lp = std::max(1, opt.lattice_points);
    for (int j = 0; j < n; ++j) {
      if (j == fam.axis) continue;
      for (int a = 0; a < lp; ++a) {
        for (int b = 0; b < lp; ++b) {
          const double s = lp == 1 ? 0.0 : -opt.coefficient_bound + 2.0 * opt.coefficient_bound * a / (lp - 1);
          const double t = lp == 1 ? 0.0 : -opt.coefficient_bound + 2.0 * opt.coefficient_bound * b / (lp - 1);
          ComplexLinearMap c = ComplexLinearMap::Zero(n, degree);
          c(j, 0) = Cx(s, t);
          AnalyticCandidate x = base;
          x.coeffs = c;
          lattice.push_back(x.parameters());
        }
      }
    }
    std::vector<double> lattice_area(lattice.size());
    parallel_for(lattice.size(), [&](std::size_t i) { lattice_area[i] = objective(lattice[i]); });
    std::vector<std::size_t> order(lattice.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lattice_area[a] < lattice_area[b]; });

    const int restarts = std::max(1, opt.restarts);
    const int from_lattice = (restarts + 1) / 2;
    std::vector<std::vector<double>> starts;
    for (std::size_t i = 0; i < order.size() && static_cast<int>(starts.size()) < from_lattice; ++i) {
      starts.push_back(lattice[order[i]]);
    }
    std::mt19937_64 rng(opt.seed + 0x9E3779B97F4A7C15ull * (fi + 1));
    std::normal_distribution<double> normal(0.0, 0.3);
    while (static_cast<int>(starts.size()) < restarts) {
      std::vector<double> p = lattice[order.front()];
      for (double& x : p) x += normal(rng);
      starts.push_back(std::move(p));
    }

    std::vector<MinimizeResult> results(starts.size());
    parallel_for(starts.size(), [&](std::size_t i) { results[i] = nelder_mead(objective, starts[i], 0.25, opt.nm_iterations); });

    std::size_t best = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      est.local_optima.push_back({base.with_parameters(results[i].x), results[i].value});
      if (results[i].value < results[best].value) best = i;
    }
    if (std::isfinite(results[best].value)) {
      const AnalyticCandidate x = base.with_parameters(results[best].x);
      ++evaluated;
      const double area = candidate_area(x, g, opt.final_quad);
      if (area < est.best_area) {
        est.best_area = area;
        est.best_candidate = x;
      }
    }
    est.upper_history.push_back(std::sqrt(est.best_area / kPi));
  }
  if (!std::isfinite(est.best_area)) throw UnboundedCandidate("every searched candidate is unbounded in the domain");
  est.upper = std::sqrt(est.best_area / kPi);
  est.samples_evaluated = evaluated;
  return est;
}

std::string to_string(Verdict v) { return v == Verdict::NoEmbedding ? "no_embedding" : "inconclusive"; }

Certificate nonsqueeze_certificate(const Domain& g, double radius, const RadiusEstimate& est) {
  if (!(radius > 0.0)) throw InvalidInput("target cylinder radius must be positive");
  (void)g;
  Certificate c;
  c.rule =
      "holomorphic radius bound: a symplectic image of G inside D(R) x C^(n-1) forces rh(G) <= R; "
      "the lower bound is the Lelong bound of the inscribed ball";
  c.bound = est.lower;
  c.target_radius = radius;
  c.verdict = est.lower > radius ? Verdict::NoEmbedding : Verdict::Inconclusive;
  return c;
}

Certificate ball_certificate(const Domain& g, double radius) {
  if (!(radius > 0.0)) throw InvalidInput("target cylinder radius must be positive");
  Certificate c;
  c.rule =
      "Gromov non-squeezing: a ball B(a) embedded in G and G embedded in D(R) x C^(n-1) force a <= R; "
      "a is the registry-certified embedded ball radius";
  c.bound = embedded_ball_bound(g);
  c.target_radius = radius;
  c.verdict = c.bound > radius ? Verdict::NoEmbedding : Verdict::Inconclusive;
  return c;
}

double embedded_ball_bound(const Domain& g) {
  return std::visit(Overloaded{
                        [](const Ball& b) { return b.radius; },
                        [](const Disc& d) { return d.radius; },
                        [](const Polydisc& p) { return *std::min_element(p.radii.begin(), p.radii.end()); },
                        [](const RealBidisc& r) {
                          return std::sqrt(r.r) * (2.0 / std::sqrt(kPi) - kBallRegistryEpsilon);
                        },
                        [](const Cylinder&) -> double {
                          throw Unsupported("embedded ball bound of an unbounded cylinder");
                        },
                        [](const Product& p) {
                          double m = std::numeric_limits<double>::infinity();
                          for (const auto& f : p.factors) m = std::min(m, embedded_ball_bound(f));
                          return m;
                        },
                        [&](const Transformed&) { return inradius(g); },
                    },
                    g.variant());
}

CensusReport minimal_disc_census(const Domain& g, const std::vector<CandidateFamily>& families, const CensusConfig& cfg) {
  const int n = g.dim();
  std::vector<BoundaryCircle> rigid;
  for (const auto& c : boundary_circles(g)) {
    if (!passes_through_origin(complexify(c))) rigid.push_back(c);
  }

  std::vector<AnalyticCandidate> pool;
  for (int k = 0; k < n; ++k) pool.push_back(AnalyticCandidate::graph(n, k, ComplexLinearMap::Zero(n, 1)));
  if (!families.empty()) {
    const RadiusEstimate est = estimate_rh(g, families, cfg.optimizer);
    for (const auto& hit : est.local_optima) {
      if (std::isfinite(hit.area)) pool.push_back(hit.candidate);
    }
  }

  CensusReport rep;
  rep.pool.resize(pool.size());
  parallel_for(pool.size(), [&](std::size_t i) {
    const CandidateArea a = candidate_area_report(pool[i], g, cfg.optimizer.final_quad, cfg.boundary_samples);
    CensusEntry& e = rep.pool[i];
    e.candidate = pool[i];
    e.area = a.area;
    for (const auto& p : a.boundary) {
      for (const auto& c : rigid) {
        if (c.distance(p) <= cfg.touch_tol) e.touches_rigid_circle = true;
      }
    }
  });

  // Pool order puts the axis discs first, so they represent their clusters.
  const double threshold = (1.0 + cfg.area_tol) * kPi;
  std::optional<double> touching, other;
  for (const CensusEntry& e : rep.pool) {
    if (e.area <= threshold) {
      const CxVector t = e.candidate.tangent();
      const bool seen = std::any_of(rep.minimizers.begin(), rep.minimizers.end(), [&](const CensusEntry& m) {
        return std::abs(complex_inner(t, m.candidate.tangent())) >= cfg.direction_tol;
      });
      if (!seen) rep.minimizers.push_back(e);
    } else {
      auto& slot = e.touches_rigid_circle ? touching : other;
      if (!slot || e.area - kPi < *slot) slot = e.area - kPi;
    }
  }
  std::stable_sort(rep.minimizers.begin(), rep.minimizers.end(), [](const CensusEntry& a, const CensusEntry& b) {
    Eigen::Index ka = 0, kb = 0;
    a.candidate.tangent().cwiseAbs().maxCoeff(&ka);
    b.candidate.tangent().cwiseAbs().maxCoeff(&kb);
    return ka < kb;
  });
  rep.distinct_count = static_cast<int>(rep.minimizers.size());
  rep.margin = touching ? touching : other;
  return rep;
}

}  // namespace symrig
