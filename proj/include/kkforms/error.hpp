#pragma once

#include <stdexcept>
#include <string>

namespace kkforms {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Metric (or lifted metric) too close to degenerate at the sampled point.
class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

/// A field produced a non-finite component, usually at or near a singular locus.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// Index, slot, order or dimension argument out of range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Solution parameters violate one of the classification constraints.
/// The message names the violated constraint.
class ParameterError : public Error {
 public:
  using Error::Error;
};

}  // namespace kkforms
