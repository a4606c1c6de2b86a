#pragma once

#include <stdexcept>
#include <string>

namespace sgh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectors from different spaces, or coordinates of the wrong length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the domain of a mapping, or a table lookup missed.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-supplied configuration (parameters, grids, schedules, files).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The LP solver could not produce an answer (distinct from infeasibility).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgh
