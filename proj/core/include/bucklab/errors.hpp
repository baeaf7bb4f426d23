#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bucklab {

// A caller broke a documented precondition (non-coprime moduli, residue out of
// range, a > b, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Interval refinement ran out of budget while an enclosure still straddled the
// boundary it had to decide. Usually means the input was rational after all.
class UndecidableAtPrecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal cross-check failed. Never caught inside the library.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A dense computation would exceed the configured span (memory guard).
class CapacityExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The expansion stopped at the modulus-product cap before the requested stage.
class StageBudgetReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public std::invalid_argument {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace bucklab
