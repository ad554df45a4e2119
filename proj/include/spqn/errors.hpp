#pragma once

#include <stdexcept>
#include <string>

namespace spqn {

/// Cutoff doubling failed to stabilize an operator below its tolerance.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A threshold search was requested for a scenario that does not violate
/// the CHSH bound even at ideal efficiencies.
struct NoViolationError : std::runtime_error {
  explicit NoViolationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spqn
