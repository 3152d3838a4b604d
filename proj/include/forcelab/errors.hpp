#pragma once

#include <stdexcept>
#include <string>

namespace forcelab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

// An enumeration or search would exceed its item budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

struct InputTooLarge : Error {
  using Error::Error;
};

// Two conditions have no common extension.
struct IncompatibleError : Error {
  using Error::Error;
};

struct DecodeError : Error {
  using Error::Error;
};

}  // namespace forcelab
