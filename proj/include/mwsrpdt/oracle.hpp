#pragma once

#include <cstdint>

#include "mwsrpdt/types.hpp"

namespace mwsrpdt {

struct OracleLimits {
  int max_tasks = 7;                  // refuse larger instances up front
  std::uint64_t max_nodes = 50'000'000;
  double wall_clock_seconds = 0.0;    // 0 = no time limit
};

struct OracleResult {
  ObjectiveValue optimal;
  Solution solution;
  std::uint64_t nodes_explored = 0;
};

// Exact solver for tiny instances: depth-first search branching on every
// candidate a team could pick at each dispatch decision, under exactly the
// same day/event semantics as the constructive heuristic (teams re-enter only
// via completion events and return to the depot when nothing fits). The
// optimum is therefore the best schedule reachable by any selection rule —
// the correct ground truth for the heuristics (the MIP model additionally
// allows waiting patterns the event semantics cannot express).
//
// Throws InvalidConfigError when the instance exceeds limits.max_tasks tasks
// or has more than 3 teams, BudgetExceededError when max_nodes or the wall
// clock is exhausted before the search completes, and StalledDayError when no
// schedule exists (some task can never fit in a day).
OracleResult solve_exact(const Instance& inst, const OracleLimits& limits = {});

}  // namespace mwsrpdt
