#pragma once

#include <stdexcept>
#include <string>

namespace orlicz_flow {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A measure with a non-positive or non-finite node weight.
class InvalidMeasureError : public Error {
 public:
  using Error::Error;
};

/// Grid functions whose lengths do not match their grid.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input outside the effective domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Query time outside [0, T].
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid problem or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An iterative scalar solve that did not converge. Carries the best bound
/// reached before the iteration cap.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double best_bound)
      : Error(what), best_bound_(best_bound) {}

  double best_bound() const noexcept { return best_bound_; }

 private:
  double best_bound_;
};

}  // namespace orlicz_flow
