#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "symrig/types.hpp"

// Generators and oracles shared by the tests. They deliberately avoid the library's own helpers
// (haar_unitary, realify, to_real) so that comparisons against the library are independent.

namespace symrig::testing {

inline Cx random_cx(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

inline ComplexLinearMap random_complex_matrix(int rows, int cols, std::mt19937_64& rng, double scale = 1.0) {
  ComplexLinearMap m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_cx(rng, scale);
  return m;
}

inline CxVector random_vector(int n, std::mt19937_64& rng, double scale = 1.0) {
  CxVector v(n);
  for (int i = 0; i < n; ++i) v(i) = random_cx(rng, scale);
  return v;
}

// Classical Gram-Schmidt on the columns of a random complex matrix.
inline ComplexLinearMap gram_schmidt_unitary(int n, std::mt19937_64& rng) {
  ComplexLinearMap m = random_complex_matrix(n, n, rng);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      Cx proj = 0.0;
      for (int i = 0; i < n; ++i) proj += std::conj(m(i, k)) * m(i, j);
      for (int i = 0; i < n; ++i) m(i, j) -= proj * m(i, k);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(m(i, j));
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) m(i, j) /= norm;
  }
  return m;
}

inline RealLinearMap gram_schmidt_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealLinearMap m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = normal(rng);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) m.col(j) -= m.col(k).dot(m.col(j)) * m.col(k);
    m.col(j).normalize();
  }
  return m;
}

// Entry a+ib -> block [[a, -b], [b, a]], written out independently of the library.
inline RealLinearMap block_realify(const ComplexLinearMap& m) {
  RealLinearMap r(2 * m.rows(), 2 * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double a = m(i, j).real(), b = m(i, j).imag();
      r(2 * i, 2 * j) = a;
      r(2 * i, 2 * j + 1) = -b;
      r(2 * i + 1, 2 * j) = b;
      r(2 * i + 1, 2 * j + 1) = a;
    }
  }
  return r;
}

inline Eigen::VectorXd interleave(const CxVector& z) {
  Eigen::VectorXd v(2 * z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    v(2 * i) = z(i).real();
    v(2 * i + 1) = z(i).imag();
  }
  return v;
}

inline CxVector deinterleave(const Eigen::VectorXd& v) {
  CxVector z(v.size() / 2);
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = {v(2 * i), v(2 * i + 1)};
  return z;
}

// (x1, y1, x2, y2) -> (x1, x2, y1, y2).
inline RealLinearMap swap_t0() {
  RealLinearMap t = RealLinearMap::Zero(4, 4);
  t(0, 0) = 1.0;
  t(1, 2) = 1.0;
  t(2, 1) = 1.0;
  t(3, 3) = 1.0;
  return t;
}

inline RealLinearMap diag_pattern(int a, int b) {
  RealLinearMap d = RealLinearMap::Identity(4, 4);
  d(1, 1) = a;
  d(3, 3) = b;
  return d;
}

// Operator norm of a complex matrix through the real 2n x 2n form.
inline double spectral_norm(const ComplexLinearMap& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(block_realify(a));
  return svd.singularValues()(0);
}

// A of a linear J-holomorphic disc z(xi, eta) = p xi + q eta with q = J p: A = z_zetabar / conj(z_zeta).
inline Cx linear_disc_a(const Eigen::Matrix2d& j) {
  const Eigen::Vector2d p(1.0, 0.0);
  const Eigen::Vector2d q = j * p;
  const Cx zxi(p(0), p(1)), zeta_(q(0), q(1));
  const Cx dz = 0.5 * (zxi - Cx(0, 1) * zeta_);
  const Cx dzbar = 0.5 * (zxi + Cx(0, 1) * zeta_);
  return dzbar / std::conj(dz);
}

}  // namespace symrig::testing
