#pragma once

#include <stdexcept>
#include <string>

namespace mdlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (size mismatch, bad parameter).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Strict padding refuses messages of 2^L or more bits.
class InputTooLong : public Error {
 public:
  using Error::Error;
};

// The factorial residue of a repeat count cannot be computed within budget.
class IrreducibleModulus : public Error {
 public:
  using Error::Error;
};

// Exhaustive work requested over a state space that is too large.
class DomainTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace mdlab
