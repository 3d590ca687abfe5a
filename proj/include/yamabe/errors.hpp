#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace yamabe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression source. `offset` is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A value left the domain of an operation (log of non-positive, division by zero, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message, std::string subtree = {})
      : Error(subtree.empty() ? message : message + " in '" + subtree + "'"),
        subtree_(std::move(subtree)) {}
  const std::string& subtree() const noexcept { return subtree_; }

 private:
  std::string subtree_;
};

/// Operands with incompatible shape, order, or base point.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Requested derivative order exceeds what the jets carry.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// Operation is not defined in the requested dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Metric is degenerate (or numerically so) at the evaluation point.
class SingularMetricError : public Error {
 public:
  using Error::Error;
};

/// ODE integration failed (step underflow, invalid state, ...).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument to a public operation (violated precondition).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace yamabe
