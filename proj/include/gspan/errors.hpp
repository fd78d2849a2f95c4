#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace gspan {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A multiplication table failed a group axiom. `witness` holds the
// offending triple (unused slots are -1) and `axiom` names the law.
struct NotAGroupError : Error {
  NotAGroupError(std::string axiom_, std::array<int, 3> witness_)
      : Error("not a group: " + axiom_ + " fails at (" +
              std::to_string(witness_[0]) + "," + std::to_string(witness_[1]) +
              "," + std::to_string(witness_[2]) + ")"),
        axiom(std::move(axiom_)),
        witness(witness_) {}
  std::string axiom;
  std::array<int, 3> witness;
};

struct UnsupportedParameterError : Error {
  using Error::Error;
};

// Input exceeds a configured desk-scale cap (group order, category size, ...).
struct OversizeError : Error {
  using Error::Error;
};

// A structural invariant failed on construction (equivariance, cocycle law,
// composition table, ...).
struct ValidationError : Error {
  using Error::Error;
};

struct ClassMismatchError : Error {
  using Error::Error;
};
struct DimensionMismatchError : Error {
  using Error::Error;
};
struct NotASubgroupChainError : Error {
  using Error::Error;
};
struct MissingCoproductsError : Error {
  using Error::Error;
};
struct LegMismatchError : Error {
  using Error::Error;
};
struct NotCommutingError : Error {
  using Error::Error;
};
struct IncoherentPseudoDataError : Error {
  using Error::Error;
};
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace gspan
