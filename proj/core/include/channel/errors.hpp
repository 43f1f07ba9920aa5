#pragma once

#include <stdexcept>
#include <string>

namespace chan {

// Bad argument values (negative order, even dimension, non-finite input).
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the range where an approximation is defined.
struct OutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Request the implementation cannot honour, e.g. a derivative order a profile
// does not provide, or a delta'' term.
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coincident nodes in a Cauchy system.
struct SingularConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An integral over an infinite range does not converge.
struct Divergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical routine stopped before reaching its tolerance. Carries the best
// estimate it had.
struct AccuracyFailure : std::runtime_error {
  AccuracyFailure(const std::string& what, double best, double err)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
  double best_estimate;
  double error_estimate;
};

}  // namespace chan
