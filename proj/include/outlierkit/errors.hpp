#pragma once

#include <stdexcept>
#include <string>

namespace outlierkit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (probability outside (0,1), negative chi-square argument, nonpositive
/// data for the shape-scale wrapper, empty sample, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The scale estimate of a sample is zero (all values identical, or too many
/// ties for the rank used by Qn).
class DegenerateScaleError : public Error {
 public:
  using Error::Error;
};

/// Invalid method configuration (s too large, wrong family for a side, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A critical value required by a classifier is not available.
class MissingCriticalValueError : public Error {
 public:
  using Error::Error;
};

/// Input data cannot be used: unreadable file, unparsable or non-finite cell,
/// too few observations.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace outlierkit
