#pragma once

#include <stdexcept>
#include <string>

namespace starclean {

/// Group order, ring size or enumeration size over the configured limit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration would exceed the element budget.
class BudgetExceeded : public CapacityError {
 public:
  BudgetExceeded(const std::string& what, std::string cardinality)
      : CapacityError(what + " (cardinality " + cardinality + ")"),
        cardinality_(std::move(cardinality)) {}

  const std::string& cardinality() const { return cardinality_; }

 private:
  std::string cardinality_;
};

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A lemma was invoked outside its hypotheses (e.g. g not central).
class HypothesisViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Theory-side and brute-force verdicts disagree. Always an implementation bug.
class DiscrepancyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace starclean
