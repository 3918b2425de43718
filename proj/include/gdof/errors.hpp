#pragma once

#include <stdexcept>
#include <string>

namespace gdof {

/// A documented precondition of an operation does not hold (wrong K, regime
/// violated, parameter out of range). CLI exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Tensor shapes or requested dimensions do not match.
class DimensionError : public PreconditionError {
 public:
  explicit DimensionError(const std::string& what) : PreconditionError(what) {}
};

/// Input text does not follow one of the JSON schemas. CLI exit code 2.
class SchemaError : public PreconditionError {
 public:
  explicit SchemaError(const std::string& what) : PreconditionError(what) {}
};

/// The request exceeds an enumeration or dimension limit. CLI exit code 3.
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gdof
