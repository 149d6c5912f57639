#pragma once

#include <stdexcept>
#include <string>

namespace midlayer {

// Bad user-supplied parameter (d out of range, psi > d/2, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data violates a documented precondition (improper coloring,
// cover instance with the wrong degree bounds, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive computation would exceed a configured cap. `estimate`
// carries the size that was projected when the cap was hit.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, double estimate = 0.0)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

// Two routes that must agree exactly did not. Always a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace midlayer
