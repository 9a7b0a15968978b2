#pragma once

#include <stdexcept>
#include <string>

namespace ogk {

// Caller handed us something that violates a documented precondition.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An internal consistency check failed; the input tables are corrupt or a
// theorem-level identity did not hold.
struct InvariantFailure : std::logic_error {
  using std::logic_error::logic_error;
};

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration would exceed the configured cell budget.
struct SizeLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace ogk
