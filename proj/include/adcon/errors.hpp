#pragma once

#include <stdexcept>
#include <string>

namespace adcon {

// An operation's stated preconditions do not hold (bad dimensions, wrong
// flags for the algorithm, non-probability inputs, ...).
struct PreconditionViolated : std::invalid_argument {
  explicit PreconditionViolated(const std::string& msg) : std::invalid_argument(msg) {}
};

// Raised by brute-force enumeration when 2^ell would exceed the guard.
struct EnumerationTooLarge : std::runtime_error {
  explicit EnumerationTooLarge(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the randomized grid search when the coordinate guard is exceeded.
struct SearchGuardExceeded : std::runtime_error {
  explicit SearchGuardExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the simplex when pivot magnitudes degenerate under both rules.
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace adcon
