#pragma once

#include <stdexcept>
#include <string>

namespace twoadic {

/// Input that violates an operation's precondition (empty sequence, even q, bad alphabet).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside the range where a closed form is claimed.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The request exceeds a compute budget (enumeration cap, oracle cap).
/// Callers distinguish this from InvalidInput: the input is fine, it is just too big.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twoadic
