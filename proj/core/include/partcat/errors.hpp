#pragma once

#include <stdexcept>
#include <string>

namespace partcat {

/// Two objects that must share colored words (or a full (upper, lower, n)
/// context) do not.
class WordMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed the configured memory or enumeration budget.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace partcat
