#pragma once

#include <stdexcept>
#include <string>

namespace avgjohn {

// Rejected input: malformed data, out-of-range parameters, size caps.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A solver or search failed to reach its tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace avgjohn
