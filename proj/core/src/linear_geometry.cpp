#include "symrig/linear_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symrig/errors.hpp"

namespace symrig {

RealVector to_real(const CxVector& z) {
  RealVector v(2 * z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    v(2 * j) = z(j).real();
    v(2 * j + 1) = z(j).imag();
  }
  return v;
}

CxVector to_complex(const RealVector& v) {
  if (v.size() % 2 != 0) throw InvalidInput("real vector has odd length");
  CxVector z(v.size() / 2);
  for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = Cx(v(2 * j), v(2 * j + 1));
  return z;
}

RealLinearMap realify(const ComplexLinearMap& m) {
  RealLinearMap r(2 * m.rows(), 2 * m.cols());
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const double a = m(j, k).real();
      const double b = m(j, k).imag();
      r(2 * j, 2 * k) = a;
      r(2 * j, 2 * k + 1) = -b;
      r(2 * j + 1, 2 * k) = b;
      r(2 * j + 1, 2 * k + 1) = a;
    }
  }
  return r;
}

ComplexLinearMap complex_part(const RealLinearMap& t, double tol) {
  if (t.rows() % 2 != 0 || t.cols() % 2 != 0) throw InvalidInput("real map has odd dimension");
  const int n = static_cast<int>(t.rows() / 2);
  const int m = static_cast<int>(t.cols() / 2);
  const RealLinearMap jr = standard_structure(n);
  const RealLinearMap jc = standard_structure(m);
  if ((jr * t - t * jc).norm() > tol * std::max(1.0, t.norm())) {
    throw InvalidInput("real map is not complex linear");
  }
  ComplexLinearMap c(n, m);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < m; ++k) {
      const double a = 0.5 * (t(2 * j, 2 * k) + t(2 * j + 1, 2 * k + 1));
      const double b = 0.5 * (t(2 * j + 1, 2 * k) - t(2 * j, 2 * k + 1));
      c(j, k) = Cx(a, b);
    }
  }
  return c;
}

RealLinearMap standard_structure(int n) {
  return realify(ComplexLinearMap::Identity(n, n) * Cx(0.0, 1.0));
}

RealLinearMap conjugation_matrix(int n) {
  RealLinearMap c = RealLinearMap::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    c(2 * j, 2 * j) = 1.0;
    c(2 * j + 1, 2 * j + 1) = -1.0;
  }
  return c;
}

RealLinearMap symplectic_form_matrix(int n) {
  // omega(e_x, e_y) = 1, so Omega = -J_st.
  return -standard_structure(n);
}

double real_inner(const CxVector& a, const CxVector& b) {
  return complex_inner(a, b).real();
}

Cx complex_inner(const CxVector& a, const CxVector& b) {
  if (a.size() != b.size()) throw InvalidInput("vector dimension mismatch");
  Cx s = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) s += a(j) * std::conj(b(j));
  return s;
}

double orthogonality_defect(const RealLinearMap& t) {
  if (t.rows() != t.cols()) return std::numeric_limits<double>::infinity();
  return (t.transpose() * t - RealLinearMap::Identity(t.rows(), t.cols())).norm();
}

double unitarity_defect(const ComplexLinearMap& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m.adjoint() * m - ComplexLinearMap::Identity(m.rows(), m.cols())).norm();
}

bool is_orthogonal(const RealLinearMap& t, double tol) { return orthogonality_defect(t) <= tol; }
bool is_unitary(const ComplexLinearMap& m, double tol) { return unitarity_defect(m) <= tol; }

RealPlane::RealPlane(CxVector u, CxVector v, double tol) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.size() != v_.size() || u_.size() == 0) throw InvalidInput("plane vectors differ in dimension");
  if (!u_.allFinite() || !v_.allFinite()) throw InvalidInput("plane vectors must be finite");
  const double nu = u_.norm();
  const double nv = v_.norm();
  const double uv = real_inner(u_, v_);
  if (std::abs(nu - 1.0) > tol || std::abs(nv - 1.0) > tol || std::abs(uv) > tol) {
    throw InvalidInput("degenerate plane: spanning pair is not orthonormal");
  }
}

RealPlane RealPlane::spanned_by(const CxVector& a, const CxVector& b) {
  const double na = a.norm();
  if (!(na > 0.0)) throw InvalidInput("degenerate plane: zero vector");
  CxVector u = a / na;
  CxVector w = b - real_inner(b, u) * u;
  const double nw = w.norm();
  if (!(nw > 1e-10 * std::max(1.0, b.norm()))) {
    throw InvalidInput("degenerate plane: spanning vectors are parallel");
  }
  w /= nw;
  // One re-orthogonalisation pass keeps the pair orthonormal to rounding.
  w -= real_inner(w, u) * u;
  w /= w.norm();
  return RealPlane(u, w);
}

RealLinearMap RealPlane::projector() const {
  const RealVector a = to_real(u_);
  const RealVector b = to_real(v_);
  return a * a.transpose() + b * b.transpose();
}

double RealPlane::distance(const CxVector& z) const {
  const CxVector r = z - real_inner(z, u_) * u_ - real_inner(z, v_) * v_;
  return r.norm();
}

double complex_line_defect(const RealPlane& p) {
  const Cx i(0.0, 1.0);
  return std::max(p.distance(i * p.u()), p.distance(i * p.v()));
}

bool is_complex_line(const RealPlane& p, double tol) { return complex_line_defect(p) <= tol; }

RealPlane complement(const RealPlane& p, ComplementMode mode, double tol) {
  if (p.dim() != 2) throw InvalidInput("complement is defined for planes in C^2");
  if (mode == ComplementMode::Complex) {
    if (!is_complex_line(p, tol)) {
      throw InvalidInput("Hermitian complement of a plane that is not a complex line is {0}");
    }
    const CxVector& u = p.u();
    CxVector w(2);
    w << -std::conj(u(1)), std::conj(u(0));
    w /= w.norm();
    return RealPlane(w, Cx(0.0, 1.0) * w);
  }

  // Real mode: Gram-Schmidt the standard basis against (u, v); keep the two best-conditioned.
  std::vector<RealVector> basis = {to_real(p.u()), to_real(p.v())};
  std::array<std::pair<double, RealVector>, 4> candidates;
  for (int k = 0; k < 4; ++k) {
    RealVector e = RealVector::Unit(4, k);
    for (const auto& b : basis) e -= e.dot(b) * b;
    candidates[k] = {e.norm(), e};
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  RealVector w1 = candidates[0].second / candidates[0].first;
  RealVector w2 = candidates[1].second;
  for (const auto& b : basis) w2 -= w2.dot(b) * b;
  w2 -= w2.dot(w1) * w1;
  if (w2.norm() < 1e-8) {
    w2 = candidates[2].second;
    for (const auto& b : basis) w2 -= w2.dot(b) * b;
    w2 -= w2.dot(w1) * w1;
  }
  w2 /= w2.norm();
  return RealPlane(to_complex(w1), to_complex(w2));
}

bool same_subspace(const RealPlane& a, const RealPlane& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return (a.projector() - b.projector()).norm() <= tol;
}

RealLinearMap pattern_matrix(int a, int b) {
  RealLinearMap d = RealLinearMap::Identity(4, 4);
  d(1, 1) = a;
  d(3, 3) = b;
  return d;
}

ClassificationResult classify_orthogonal(const RealLinearMap& t, double tol) {
  if (t.rows() != 4 || t.cols() != 4) throw InvalidInput("classification needs a 4x4 real matrix");
  if (!t.allFinite()) throw InvalidInput("matrix has non-finite entries");
  if (!is_orthogonal(t, tol)) throw InvalidInput("matrix is not orthogonal within tolerance");

  // Images of H1 = {z2 = 0} and H2 = {z1 = 0}; columns of T are orthonormal already.
  const RealPlane th1(to_complex(t.col(0)), to_complex(t.col(1)), 10 * tol + 1e-12);
  const RealPlane th2(to_complex(t.col(2)), to_complex(t.col(3)), 10 * tol + 1e-12);
  const double d1 = complex_line_defect(th1);
  const double d2 = complex_line_defect(th2);

  ClassificationResult result;
  if (d1 > tol) result.failed_planes.push_back("TH1");
  if (d2 > tol) result.failed_planes.push_back("TH2");
  if (!result.failed_planes.empty()) {
    result.residual = std::max(d1, d2);
    return result;
  }

  // Complex generators of the two image lines; U sends them to e1, e2.
  const Cx i(0.0, 1.0);
  CxVector g1 = th1.u();
  CxVector g2 = th2.u();
  g2 -= complex_inner(g2, g1) * g1;
  g2 /= g2.norm();
  ComplexLinearMap w(2, 2);
  w.col(0) = g1;
  w.col(1) = g2;
  const ComplexLinearMap u = w.adjoint();

  // T sends i e1 to +/- i g1: a linear axis if +, conjugating if -.
  const int a = real_inner(th1.v(), i * g1) >= 0.0 ? 1 : -1;
  const int b = real_inner(to_complex(t.col(3)), i * g2) >= 0.0 ? 1 : -1;
  const double residual = (realify(u) * t - pattern_matrix(a, b)).norm();
  result.residual = residual;
  if (residual > tol) {
    result.failed_planes.push_back("witness");
    return result;
  }
  result.equivalent = true;
  result.witness_unitary = u;
  result.pattern = std::array<int, 2>{a, b};
  return result;
}

ComplexLinearMap haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexLinearMap z(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) z(j, k) = Cx(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexLinearMap> qr(z);
  ComplexLinearMap q = qr.householderQ() * ComplexLinearMap::Identity(n, n);
  const ComplexLinearMap r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

RealLinearMap haar_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealLinearMap z(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) z(j, k) = normal(rng);
  Eigen::HouseholderQR<RealLinearMap> qr(z);
  RealLinearMap q = qr.householderQ() * RealLinearMap::Identity(n, n);
  const RealLinearMap r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k)
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  return q;
}

}  // namespace symrig
