#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wardlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluator produced a non-finite value; carries the offending index.
struct EvaluationError : Error {
  EvaluationError(std::uint64_t index, const std::string& what)
      : Error(what), index(index) {}
  std::uint64_t index;
};

// A declared precondition or structural invariant does not hold.
struct ContractError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct CatalogueError : Error {
  using Error::Error;
};

struct ParameterError : Error {
  using Error::Error;
};

// A corpus value fell outside a function's domain; carries the index.
struct DomainError : Error {
  DomainError(std::uint64_t index, const std::string& what)
      : Error(what), index(index) {}
  std::uint64_t index;
};

// The question cannot be answered from the set's representation.
struct UndecidableError : Error {
  using Error::Error;
};

// Witness requested from a set that is bounded on the relevant side.
struct NoWitnessError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// Extraction declined an input outside its admissible range.
struct RefusalError : Error {
  using Error::Error;
};

}  // namespace wardlab
