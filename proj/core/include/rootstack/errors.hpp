#pragma once

#include <stdexcept>
#include <string>

namespace rootstack {

// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands violate an operation's contract (mismatched contexts, bad shapes).
class ContractError : public Error {
 public:
  using Error::Error;
};

// A claimed exact quotient left a remainder. This always signals a wrong
// identity or a transcription error, never a numerical issue.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

// Invalid geometric configuration (non-nef divisor, non-coprime roots, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The I-function has a nontrivial mirror map; Birkhoff factorization is not
// supported, so no invariants are read off.
class MirrorMapError : public Error {
 public:
  using Error::Error;
};

// Extended data too small to contain the requested contact orders.
class IncompletenessError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace rootstack
