#pragma once

#include <stdexcept>
#include <string>

namespace waveguide {

// Array shape disagrees with the geometry, or two operands live on
// different geometries.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its documented domain (aliasing margin,
// wraparound, nonpositive thickness, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested (m, n) regime has no implemented formula.
class UnsupportedRegime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Time stepping diverged (sup-norm growth or non-finite values).
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least squares design matrix is rank deficient.
class DegenerateFit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ResourceRefusal : public std::runtime_error {
 public:
  ResourceRefusal(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

}  // namespace waveguide
