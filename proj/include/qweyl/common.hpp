#pragma once

#include <stdexcept>
#include <string>

namespace qweyl {

// Thrown when an enumeration would exceed a configured size cap.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by numeric evaluation when a denominator vanishes at the sample point.
struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a truncating operator series does not terminate within the
// dimension bound.
struct NotNilpotentError : std::runtime_error {
  explicit NotNilpotentError(const std::string& what) : std::runtime_error(what) {}
};

// Structural failure: a computed object violates a contract that the caller
// relies on (dimension mismatch against an oracle, invariance failure, ...).
struct StructureError : std::runtime_error {
  explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qweyl
