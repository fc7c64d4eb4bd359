#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "symrig/domains.hpp"
#include "symrig/types.hpp"

namespace symrig {

/// Almost complex structure at one point: a real 2n x 2n matrix with J^2 = -I.
class PointStructure {
 public:
  explicit PointStructure(RealLinearMap j, double tol = 1e-8);
  const RealLinearMap& matrix() const { return j_; }
  int dim() const { return static_cast<int>(j_.rows() / 2); }

 private:
  RealLinearMap j_;
};

/// Q = (J_st + J)^{-1} (J_st - J) and the complex matrix A with A v = Q conj(v).
struct AntilinearPart {
  RealLinearMap q;
  ComplexLinearMap a;
};

AntilinearPart antilinear_part(const PointStructure& j, double tol = 1e-12);
AntilinearPart antilinear_part(const RealLinearMap& j, double tol = 1e-12);

/// J = J_st (I - Q)(I + Q)^{-1} for Q = realify(A) conj. Requires ||A|| < 1.
PointStructure structure_from_matrix(const ComplexLinearMap& a);
/// Same map without the taming precondition; throws SingularStructure only if I + Q is singular.
RealLinearMap structure_matrix_unchecked(const ComplexLinearMap& a);

/// Operator norm induced by the Euclidean norm (largest singular value).
double operator_norm(const ComplexLinearMap& a);

/// omega_st(X, Y) = sum_j (X.x_j Y.y_j - X.y_j Y.x_j).
double omega_st(const CxVector& x, const CxVector& y);

/// g_J(X, Y) = (omega(X, JY) + omega(Y, JX)) / 2.
double canonical_metric(const PointStructure& j, const CxVector& x, const CxVector& y);

/// min over unit u of omega(u, J u), via the symmetric part of Omega J.
double min_taming_ratio(const RealLinearMap& j);

/// Field of complex matrices A(z) on C^n, zero outside its support.
class MatrixField {
 public:
  using Eval = std::function<ComplexLinearMap(const CxVector&)>;

  MatrixField(int dim, Eval eval, std::optional<Domain> support, double norm_bound,
              nlohmann::json descriptor = nlohmann::json::object());

  static MatrixField zero(int dim);
  static MatrixField constant(const ComplexLinearMap& a, std::optional<Domain> support = std::nullopt);
  /// amplitude * b(|z - center| / radius) * direction with b(s) = exp(1 - 1/(1 - s^2)) on s < 1.
  static MatrixField bump(const ComplexLinearMap& direction, double amplitude, const CxVector& center,
                          double radius);

  /// Evaluates A(z); returns zero outside the support. Safe to call concurrently.
  ComplexLinearMap operator()(const CxVector& z) const;

  int dim() const { return dim_; }
  const std::optional<Domain>& support() const { return support_; }
  double norm_bound() const { return norm_bound_; }
  const nlohmann::json& descriptor() const { return descriptor_; }

  MatrixField with_norm_bound(double bound) const;
  MatrixField with_descriptor(nlohmann::json descriptor) const;

 private:
  int dim_;
  Eval eval_;
  std::optional<Domain> support_;
  double norm_bound_;
  nlohmann::json descriptor_;
};

/// Smooth radial profile used by bump fields and the twist map.
double bump_profile(double s);

struct TamingReport {
  bool tamed = false;
  double sup_norm = 0.0;
  /// At every sample with |1 - ||A||| > 1e-6, positivity of the probed omega(u, Ju) agrees
  /// with ||A|| < 1.
  bool probes_consistent = true;
  int inconsistent_samples = 0;
};

/// Sup of ||A(z)|| over the samples plus the omega-probe cross-check (random unit probes and the
/// extremal eigenvector of the symmetric part of Omega J at each sample).
TamingReport is_tamed(const MatrixField& f, const std::vector<CxVector>& samples, int probes = 64,
                      std::uint64_t seed = 0);

/// Smoothstep cut-off: equal to F on `inner`, zero beyond the width-enlargement of `inner`.
/// `inner` must be a disc, polydisc or ball centred at 0.
MatrixField truncate_field(const MatrixField& f, const Domain& inner, double width);

/// Smooth map psi with analytic Jacobian and inverse, used to push J_st forward.
struct JacobianField {
  int dim = 0;
  std::function<CxVector(const CxVector&)> forward;
  std::function<CxVector(const CxVector&)> inverse;
  std::function<RealLinearMap(const CxVector&)> jacobian;
  /// Region outside which psi is complex linear (A vanishes there); nullopt for global maps.
  std::optional<Domain> support;
  nlohmann::json descriptor = nlohmann::json::object();

  static JacobianField linear(const RealLinearMap& m);
  /// Time-one map of the Hamiltonian H(s) = amplitude * prod_j b(s_j / radius^2), s_j = |z_j|^2:
  /// z_j -> z_j exp(i dH/ds_j). Exactly symplectic, identity outside the polydisc of `radius`.
  static JacobianField twist(int dim, double amplitude, double radius);
};

bool is_symplectic(const RealLinearMap& d, double tol = 1e-9);

/// A for J = dpsi J_st dpsi^{-1}, evaluated at image points w = psi(z). The norm bound is the
/// sup over `samples` (source points). When omitted, a lattice of the support is sampled and the
/// largest values are refined by local maximization.
MatrixField pushforward(const JacobianField& psi, std::optional<std::vector<CxVector>> samples = std::nullopt);

/// Regular lattice of points (per real axis `per_axis` nodes) inside [-extent, extent]^{2n}.
std::vector<CxVector> lattice_samples(int dim, double extent, int per_axis);

}  // namespace symrig
