#pragma once

#include <stdexcept>
#include <string>

namespace plflow {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured resource cap (word count, return-time bound, recursion depth)
// was exceeded.  Never silent: callers that can tolerate "unknown" must catch.
struct budget_error : error {
  using error::error;
};

// Input data violates a structural invariant (bad partition, gluing failure,
// non-dyadic data without the generic flag, malformed file, ...).
struct validation_error : error {
  using error::error;
};

// Operands are incompatible (different subshifts, domain/image mismatch).
struct mismatch_error : error {
  using error::error;
};

// A return/entry search proved unbounded within budget.  Carries a witness
// word that avoids the target set for as long as the budget allowed.
struct unbounded_return_error : budget_error {
  std::string witness;
  unbounded_return_error(const std::string& msg, std::string witness_word)
      : budget_error(msg), witness(std::move(witness_word)) {}
};

}  // namespace plflow
