#pragma once

#include <stdexcept>
#include <string>

namespace symrig {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied something that violates a precondition (shape, orthogonality, degeneracy).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// J_st + J is singular, so the anti-linear part is undefined.
class SingularStructure : public Error {
 public:
  using Error::Error;
};

/// ||A|| >= 1: the structure would not be tamed by the standard symplectic form.
class NotTamed : public Error {
 public:
  using Error::Error;
};

/// Geometric precondition failed (cut-off width exceeds available gap, etc).
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// Domain variant not handled by the requested operation.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A candidate analytic set never leaves an unbounded domain within the search radius.
class UnboundedCandidate : public Error {
 public:
  using Error::Error;
};

/// Non-finite samples met during quadrature.
class NonFinite : public Error {
 public:
  using Error::Error;
};

/// Fixed-point iteration failed to contract within the iteration budget.
class Divergence : public Error {
 public:
  Divergence(const std::string& what, double last_increment, int iterations)
      : Error(what), last_increment_(last_increment), iterations_(iterations) {}
  double last_increment() const noexcept { return last_increment_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_increment_;
  int iterations_;
};

}  // namespace symrig
