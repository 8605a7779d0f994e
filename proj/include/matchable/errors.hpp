#pragma once

#include <stdexcept>

namespace matchable {

// Two values built over different group specs or field towers were combined.
struct SpecMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An enumeration or counting bound would be exceeded.
struct SizeBoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented operation precondition does not hold for the given input.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An internal invariant check failed.  This indicates a bug in the library,
// never bad user input.
struct AuditError : std::logic_error {
  using std::logic_error::logic_error;
};

// Field division or inversion of zero.
struct DivisionByZeroError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace matchable
