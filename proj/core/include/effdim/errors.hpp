#pragma once

#include <stdexcept>
#include <string>

namespace effdim {

// A precondition on user-supplied parameters was violated. The message names
// the offending field and the constraint it must satisfy.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to reach its contract (factorization failure,
// tolerance not met).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace detail
}  // namespace effdim
