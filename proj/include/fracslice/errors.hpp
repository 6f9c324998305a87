#pragma once

#include <stdexcept>
#include <string>

namespace fracslice {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (nonpositive
/// power base, evaluation at a singular endpoint, order out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma function evaluated at (or within 1e-12 of) a nonpositive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A quadrature node produced a non-finite value.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference stencil leaves the admissible interval.
class StencilError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or serialized input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracslice
