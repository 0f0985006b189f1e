#pragma once

#include <stdexcept>

namespace coulomb {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Argument outside the range the implementation supports.
class RangeError : public std::range_error {
public:
  using std::range_error::range_error;
};

/// A result would not be representable as a finite double.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// Invalid summation / run configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The S-matrix ladder drifted away from the direct Gamma ratio.
class DriftError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace coulomb
