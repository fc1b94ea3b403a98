#pragma once

#include <stdexcept>
#include <string>

namespace paircat {

// Every failure the library reports falls in one of these families; the CLI
// maps them onto exit codes 1 (validation), 2 (numerical guard) and 3 (I/O).

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class TruncationError : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class DegenerateStateError : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class NormDriftError : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class GridTooSmallError : public NumericalGuardError {
 public:
  using NumericalGuardError::NumericalGuardError;
};

class OutOfRangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace paircat
