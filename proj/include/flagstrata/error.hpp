#pragma once

#include <stdexcept>
#include <string>

namespace flagstrata {

/// Input violates an operation's precondition (bad Cartan data, element
/// outside the required coset set, malformed word, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A resource guard tripped (element-count ceiling, oracle cost guard).
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical guarantee the code relies on did not hold. Never expected
/// to fire; if it does, either the implementation or the theory is wrong.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace flagstrata
