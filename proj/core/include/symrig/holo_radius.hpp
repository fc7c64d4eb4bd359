#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symrig/disc_area.hpp"
#include "symrig/domains.hpp"
#include "symrig/types.hpp"

namespace symrig {

enum class CandidateKind { Line, PolynomialGraph, RationalCircle };

std::string to_string(CandidateKind kind);

/// Analytic curve through the origin written as a graph over coordinate `axis`:
/// z_axis = w, z_j = sum_{d=1..D} coeffs(j, d-1) w^d. Row `axis` of coeffs is ignored.
struct AnalyticCandidate {
  CandidateKind kind = CandidateKind::Line;
  int dim = 0;
  int axis = 0;
  ComplexLinearMap coeffs;

  int degree() const { return static_cast<int>(coeffs.cols()); }
  CxVector point(Cx w) const;
  CxVector derivative(Cx w) const;
  /// Unit complex tangent direction at the origin.
  CxVector tangent() const;
  std::string describe() const;

  static AnalyticCandidate line(const CxVector& direction);
  static AnalyticCandidate graph(int dim, int axis, const ComplexLinearMap& coeffs);
  /// Complexified boundary circle; admissible only when it passes through the origin, in which case
  /// it is the complex line spanned by u.
  static AnalyticCandidate from_curve(const AlgebraicCurve& curve, double tol = kDefaultTol);

  /// Real parameter vector (re, im of every non-axis coefficient, row-major) and its inverse.
  std::vector<double> parameters() const;
  AnalyticCandidate with_parameters(const std::vector<double>& p) const;
};

/// One searched family: lines or degree-`degree` graphs over coordinate `axis` (zero-based).
struct CandidateFamily {
  CandidateKind kind = CandidateKind::Line;
  int axis = 0;
  int degree = 1;

  std::string describe() const;
};

/// Lines over every axis plus polynomial graphs of the given degree over every axis.
std::vector<CandidateFamily> default_families(int dim, int graph_degree = 4);

struct CandidateArea {
  double area = 0.0;
  double parameter_radius = 0.0;
  /// Points of the boundary of the origin piece on `boundary_samples` equally spaced rays.
  std::vector<CxVector> boundary;
};

/// Euclidean area of the connected piece through the origin of X inside G. Throws
/// UnboundedCandidate when the piece does not close up within a parameter radius of 2^20.
double candidate_area(const AnalyticCandidate& x, const Domain& g, const QuadratureConfig& quad = {});
CandidateArea candidate_area_report(const AnalyticCandidate& x, const Domain& g, const QuadratureConfig& quad = {},
                                    int boundary_samples = 0);

struct OptimizerConfig {
  /// Lattice over the linear coefficient of one non-axis coordinate at a time.
  int lattice_points = 9;
  double coefficient_bound = 3.0;
  int nm_iterations = 200;
  int restarts = 8;
  std::uint64_t seed = 0;
  /// Quadrature used inside the search; the best candidate is re-evaluated with `final_quad`.
  QuadratureConfig search_quad{.n_r = 16, .n_theta = 48, .error_estimate = false, .crossing_samples = 64,
                               .segment_order = 8};
  QuadratureConfig final_quad{};
};

struct SearchHit {
  AnalyticCandidate candidate;
  double area = 0.0;
};

struct RadiusEstimate {
  /// sqrt(min area / pi) over the searched families; heuristic.
  double upper = 0.0;
  /// Radius of the largest centred ball in G; rigorous.
  double lower = 0.0;
  double best_area = 0.0;
  AnalyticCandidate best_candidate;
  std::size_t samples_evaluated = 0;
  std::vector<std::string> families;
  /// Running upper bound after each family.
  std::vector<double> upper_history;
  /// Every local optimum found, in search order.
  std::vector<SearchHit> local_optima;
};

/// Rigorous lower bound on rh(G): radius of the largest centred ball in G (the cylinder radius for
/// cylinders), from the Lelong bound on that ball.
double lelong_lower_bound(const Domain& g);

RadiusEstimate estimate_rh(const Domain& g, const std::vector<CandidateFamily>& families,
                           const OptimizerConfig& opt = {});

enum class Verdict { NoEmbedding, Inconclusive };

std::string to_string(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  std::string rule;
  double bound = 0.0;
  double target_radius = 0.0;
};

/// NoEmbedding into D(R) x C^{n-1} when the rigorous lower bound exceeds R. Never claims existence.
Certificate nonsqueeze_certificate(const Domain& g, double radius, const RadiusEstimate& est);

/// Same question decided by the largest certified embedded ball and Gromov non-squeezing.
Certificate ball_certificate(const Domain& g, double radius);

/// Registry constant subtracted from the open bound for the real bidisc.
inline constexpr double kBallRegistryEpsilon = 5e-7;

/// Largest ball radius certified to embed symplectically into G. The real bidisc D_R^2(r) contributes
/// sqrt(r) (2/sqrt(pi) - epsilon); products take the minimum over factors; orthogonal images fall back
/// to the inradius. Cylinders are unsupported.
double embedded_ball_bound(const Domain& g);

struct CensusEntry {
  AnalyticCandidate candidate;
  double area = 0.0;
  /// Boundary passes within `touch_tol` of a boundary circle whose complexification misses the origin.
  bool touches_rigid_circle = false;
};

struct CensusReport {
  /// One representative per tangent direction, sorted by axis.
  std::vector<CensusEntry> minimizers;
  int distinct_count = 0;
  /// Smallest area above the minimizer threshold minus pi, preferring candidates that touch a rigid
  /// circle; nullopt when no such candidate exists.
  std::optional<double> margin;
  std::vector<CensusEntry> pool;
};

struct CensusConfig {
  OptimizerConfig optimizer{};
  double area_tol = 0.01;
  double direction_tol = 0.99;
  double touch_tol = 1e-3;
  int boundary_samples = 256;
};

/// Local area minimizers among the axis discs and the searched families. G must be a unit polydisc,
/// a unit real bidisc times a unit polydisc, or an orthogonal image of one.
CensusReport minimal_disc_census(const Domain& g, const std::vector<CandidateFamily>& families,
                                 const CensusConfig& cfg = {});

}  // namespace symrig
