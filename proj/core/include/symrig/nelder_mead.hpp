#pragma once

#include <functional>
#include <vector>

namespace symrig {

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free simplex minimization (GSL nmsimplex2) for a fixed number of iterations or
/// until the simplex size drops below `size_tol`.
MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                           double step, int max_iter, double size_tol = 1e-6);

}  // namespace symrig
