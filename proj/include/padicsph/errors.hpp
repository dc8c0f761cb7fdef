#pragma once

#include <stdexcept>
#include <string>

namespace padicsph {

/// Bad input or arguments that violate an operation's preconditions.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A mathematical identity that must hold exactly failed to hold.
/// Signals a bug upstream rather than bad input.
struct IdentityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arithmetic error in the exact layer (division by zero, poles).
struct ArithmeticError : std::domain_error {
  using std::domain_error::domain_error;
};

/// p-adic working precision is too small to decide a predicate.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace padicsph
