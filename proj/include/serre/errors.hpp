#pragma once

#include <stdexcept>
#include <string>

namespace serre {

// Shapes of operands do not fit together (caller bug, not a mathematical "no").
struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Matrices over different fields (Q vs F_p, or F_p vs F_q) were combined.
struct FieldMismatch : std::invalid_argument {
  explicit FieldMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// A categorical precondition failed: ill-defined morphism, endpoints that do
// not match, inverting a non-isomorphism, an unsaturated extension target...
struct ContractViolation : std::logic_error {
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Malformed user input (CLI session files, witness files).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace serre
