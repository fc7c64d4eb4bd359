#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symrig/types.hpp"

namespace symrig {

// Canonical identification R^{2n} = C^n with interleaved coordinates (x_1, y_1, ..., x_n, y_n).

RealVector to_real(const CxVector& z);
CxVector to_complex(const RealVector& v);

/// Real 2n x 2n matrix of a complex n x n matrix: entry a+ib becomes the block [[a, -b], [b, a]].
RealLinearMap realify(const ComplexLinearMap& m);

/// Inverse of realify for complex-linear real maps; throws InvalidInput if `t` does not commute with J_st.
ComplexLinearMap complex_part(const RealLinearMap& t, double tol = kDefaultTol);

/// J_st = realify(i I).
RealLinearMap standard_structure(int n);
/// Coordinate-wise complex conjugation (x, y) -> (x, -y).
RealLinearMap conjugation_matrix(int n);
/// Matrix of omega_st: omega(X, Y) = X^T Omega Y.
RealLinearMap symplectic_form_matrix(int n);

double real_inner(const CxVector& a, const CxVector& b);
/// <a, b>_C = sum a_j conj(b_j).
Cx complex_inner(const CxVector& a, const CxVector& b);

double orthogonality_defect(const RealLinearMap& t);
double unitarity_defect(const ComplexLinearMap& m);
bool is_orthogonal(const RealLinearMap& t, double tol = kDefaultTol);
bool is_unitary(const ComplexLinearMap& m, double tol = kDefaultTol);

/// Oriented real 2-plane in C^n given by an orthonormal (w.r.t. <.,.>_R) spanning pair.
class RealPlane {
 public:
  /// Validates orthonormality; throws InvalidInput when the pair is degenerate.
  RealPlane(CxVector u, CxVector v, double tol = kDefaultTol);

  /// Gram-Schmidt on an arbitrary spanning pair.
  static RealPlane spanned_by(const CxVector& a, const CxVector& b);

  const CxVector& u() const { return u_; }
  const CxVector& v() const { return v_; }
  int dim() const { return static_cast<int>(u_.size()); }

  /// Orthogonal projector onto the plane in real coordinates.
  RealLinearMap projector() const;
  /// Euclidean distance from `z` to the plane.
  double distance(const CxVector& z) const;

 private:
  CxVector u_;
  CxVector v_;
};

/// max(dist(i u, P), dist(i v, P)); zero exactly for complex lines.
double complex_line_defect(const RealPlane& p);
bool is_complex_line(const RealPlane& p, double tol = kDefaultTol);

enum class ComplementMode { Real, Complex };

/// Orthogonal complement of a plane in C^2 under <.,.>_R (Real) or <.,.>_C (Complex).
/// Complex mode needs a complex line: for a totally real plane the Hermitian complement is {0}.
RealPlane complement(const RealPlane& p, ComplementMode mode, double tol = kDefaultTol);

bool same_subspace(const RealPlane& a, const RealPlane& b, double tol = kDefaultTol);

/// diag(1, a, 1, b) in real coordinates of C^2.
RealLinearMap pattern_matrix(int a, int b);

struct ClassificationResult {
  bool equivalent = false;
  std::optional<ComplexLinearMap> witness_unitary;
  std::optional<std::array<int, 2>> pattern;
  /// ||realify(U) T - diag(1,a,1,b)||_F when a witness was built, otherwise the largest
  /// complex-line defect among the image planes.
  double residual = 0.0;
  /// "TH1" and/or "TH2" for image planes that are not complex lines.
  std::vector<std::string> failed_planes;
};

/// Decides whether the orthogonal T maps both coordinate axes of C^2 onto complex lines, and if
/// so builds U in U(2) with realify(U) T = diag(1, a, 1, b).
ClassificationResult classify_orthogonal(const RealLinearMap& t, double tol = kDefaultTol);

/// Haar-distributed samples via QR of a Gaussian matrix with the phase correction on R's diagonal.
ComplexLinearMap haar_unitary(int n, std::mt19937_64& rng);
RealLinearMap haar_orthogonal(int n, std::mt19937_64& rng);

}  // namespace symrig
