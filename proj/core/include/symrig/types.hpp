#pragma once

#include <complex>

#include <Eigen/Dense>

namespace symrig {

using Cx = std::complex<double>;

/// Point of C^n in complex coordinates z_j = x_j + i y_j.
using CxVector = Eigen::VectorXcd;
/// Point of R^{2n} in interleaved real coordinates (x_1, y_1, ..., x_n, y_n).
using RealVector = Eigen::VectorXd;
/// n x n complex matrix acting on C^n.
using ComplexLinearMap = Eigen::MatrixXcd;
/// 2n x 2n real matrix acting on R^{2n}.
using RealLinearMap = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultTol = 1e-8;

}  // namespace symrig
