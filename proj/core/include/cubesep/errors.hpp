#pragma once

#include <stdexcept>
#include <string>

namespace cubesep {

// Bad user-supplied data: files, words, unknown generators, violated
// preconditions. Maps to exit code 1 in the CLI.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural property that should hold by theorem failed at runtime.
// Maps to exit code 2.
struct InvariantError : std::runtime_error {
  explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

// The construction could not be completed on this instance (no valid chain,
// saturation stuck, ...). Maps to exit code 3.
struct ConstructionIncomplete : std::runtime_error {
  explicit ConstructionIncomplete(const std::string& msg)
      : std::runtime_error(msg) {}
};

// A search or closure exceeded its node/size budget. Maps to exit code 4.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cubesep
