#pragma once

#include <stdexcept>
#include <string>

namespace cca {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physically or structurally invalid configuration (bad sizes, non-positive
/// couplings, out-of-range parameters).
class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or schema-violating scenario input; the message names the field.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// State preparation or mixture expansion dropped more probability mass than
/// the configured tolerance allows.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Requested basis or operator block exceeds the configured memory budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Residue evaluation rejected a (near-)degenerate spectrum.
class DegenerateSpectrumError : public Error {
 public:
  using Error::Error;
};

/// Generic numerical failure (e.g. an eigensolver did not converge).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A frequency rule could not be resolved (no usable transfer window).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure while reading input or writing results.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cca
