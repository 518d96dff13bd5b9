#pragma once

#include <stdexcept>
#include <string>

namespace nonnorm {

// Precondition violations (bad modulus, zero degree, ...) are reported as
// std::invalid_argument. The types below mark domain-specific failures that
// callers routinely want to tell apart.

/// A prime ramified in the base ring was passed where an unramified one is required.
class RamifiedPrimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The modulus shares cyclotomic structure with the base field (4 | m over Q(i), 3 | m over Q(zeta_3)).
class BaseOverlapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Element reduction at a prime dividing its norm.
class ReductionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact integer arithmetic left the 64-bit range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An exact computation contradicted the theory it relies on (e.g. a reduced norm that is not rational).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A search or enumeration ran past its declared budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nonnorm
