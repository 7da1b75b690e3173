#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

// Base of every error raised by the library. Subclasses let the CLI map
// failures onto exit codes (InvariantViolation -> 2, everything else -> 1).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class AssemblyError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A computed quantity broke a property that must hold mathematically.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace nonlocal
