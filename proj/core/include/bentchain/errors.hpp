#pragma once

#include <stdexcept>

namespace bentchain {

// Raised when a spec, bend, grid or device block violates its invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a computation cannot meet its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an input or output file cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bentchain
