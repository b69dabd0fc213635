#pragma once

#include <stdexcept>
#include <string>

namespace mwsrpdt {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parameter or configuration value violates its documented domain.
struct InvalidConfigError : Error {
  using Error::Error;
};

// An Instance violates a structural invariant (bad dimensions, cyclic
// dependencies, non-positive times, ...).
struct InvalidInstanceError : Error {
  using Error::Error;
};

// Malformed text input; carries the 1-based line number of the offense.
struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& message)
      : Error("line " + std::to_string(line_) + ": " + message), line(line_) {}
};

// Objective evaluation over a solution with no visits.
struct EmptySolutionError : Error {
  using Error::Error;
};

// A full scheduling day elapsed with open tasks but no candidate fitting any
// team; the instance cannot be scheduled under the day-length rule.
struct StalledDayError : Error {
  using Error::Error;
};

// The exact solver hit its node or wall-clock limit before proving optimality.
struct BudgetExceededError : Error {
  using Error::Error;
};

// A solution failed feasibility checks where a feasible one was required.
struct InfeasibleInputError : Error {
  using Error::Error;
};

// File could not be opened / read / written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace mwsrpdt
