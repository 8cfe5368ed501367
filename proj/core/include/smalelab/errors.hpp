#ifndef SMALELAB_ERRORS_HPP_
#define SMALELAB_ERRORS_HPP_

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace smalelab {

/// Input outside the mathematical domain of an operation (empty root list,
/// constant polynomial where a derivative is required, k out of range).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition does not hold (critical evaluation point,
/// coincident points, non-normalized polynomial).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Critical-set enumeration would exceed the configured cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root finder did not converge; carries the best iterate for diagnostics.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<std::complex<double>> best,
                   std::vector<double> residuals)
      : std::runtime_error(what), best_iterate(std::move(best)), residuals(std::move(residuals)) {}

  std::vector<std::complex<double>> best_iterate;
  std::vector<double> residuals;
};

}  // namespace smalelab

#endif  // SMALELAB_ERRORS_HPP_
