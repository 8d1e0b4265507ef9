#ifndef GMC_ERRORS_HPP_
#define GMC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gmc {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A gamma-function argument (or a quantity built from one) sits on a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Hypergeometric parameters for which the series is undefined.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Gauss summation requested where the series diverges at x = 1.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// An iterative scheme (series, quadrature, fit) did not meet its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Requested moment is infinite: p >= 4 / gamma^2.
class MomentBlowupError : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse to represent the requested Fourier modes.
class AliasingError : public Error {
 public:
  using Error::Error;
};

/// Least-squares design matrix too close to singular to trust the fit.
class IllConditionedFitError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A Monte-Carlo replica threw; carries the failing replica index.
class ReplicaError : public Error {
 public:
  ReplicaError(std::size_t index, const std::string& what)
      : Error("replica " + std::to_string(index) + " failed: " + what),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace gmc

#endif  // GMC_ERRORS_HPP_
