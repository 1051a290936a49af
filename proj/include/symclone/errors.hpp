#pragma once

#include <stdexcept>
#include <string>

namespace symclone {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical parameter (transmittance, efficiency, machine triple) is outside its valid range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Measurement data cannot be evaluated: empty records, missing states, malformed files.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Configuration file or command-line value is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace symclone
