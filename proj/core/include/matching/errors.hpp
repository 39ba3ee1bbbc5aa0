#pragma once

#include <stdexcept>
#include <string>

namespace matching {

/// Base class for all errors raised by the matching library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field was evaluated outside its valid domain (non-finite values, singular loci).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A mass matrix (plant or target) is not invertible to working precision.
class SingularMetricError : public Error {
 public:
  using Error::Error;
};

/// A target metric failed the positive-definiteness check.
class IndefiniteMetricError : public Error {
 public:
  using Error::Error;
};

/// A supplied ν is not compatible with the λ-equations at the query point.
class IncompatibleNuError : public Error {
 public:
  using Error::Error;
};

/// A row completion of ĝ contradicts symmetry.
class AsymmetryError : public Error {
 public:
  using Error::Error;
};

/// Initial hypersurface is (nearly) tangent to the characteristic field.
class TransversalityError : public Error {
 public:
  using Error::Error;
};

/// A characteristic field vanished along a flow.
class SingularFieldError : public Error {
 public:
  using Error::Error;
};

/// Simulation state left the declared bound.
class BlowUpError : public Error {
 public:
  using Error::Error;
};

/// A point passed as an equilibrium is not one.
class NotEquilibriumError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its supported dimensions.
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace matching
