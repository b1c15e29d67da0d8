#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace topotype {

/// An internal identity failed to hold (for example a division that must be exact was not).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A partition type violates one of the admissibility restrictions.
class AdmissibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Brute-force enumeration was refused because it exceeds the configured guard.
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(const std::string& what, std::string estimate)
      : std::runtime_error(what), estimate_(std::move(estimate)) {}

  /// Estimated work (decimal) that triggered the refusal.
  const std::string& estimate() const noexcept { return estimate_; }

 private:
  std::string estimate_;
};

}  // namespace topotype
