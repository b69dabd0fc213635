#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mwsrpdt/types.hpp"

namespace mwsrpdt {

enum class ViolationCode {
  Malformed,       // visit fields outside their domains (team, day, numbers)
  Coverage,        // instance task not visited exactly once / unknown task
  DepotDeparture,  // first visit of a team-day starts before travel from depot
  Travel,          // consecutive visits closer in time than the travel between them
  DayLength,       // last visit of a team-day cannot return to the depot by D
  TaskTime,        // visit duration does not equal the team's task time
  Precedence,      // task starts before a dependency completes
  Makespan,        // stored (p, m) disagree with the visit list
};

std::string to_string(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::optional<int> team;
  std::optional<int> day;
  std::optional<TaskRef> task;
  std::string detail;
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Re-derives every model constraint from the instance and the raw visit list
// (routes are reconstructed from start times; the producer's bookkeeping is
// never trusted). Never throws: all problems surface as violations.
FeasibilityReport check_feasible(const Instance& inst, const Solution& sol);

// Recomputes the objective on a feasible solution via a code path independent
// of core evaluate(); throws InfeasibleInputError when check_feasible fails.
ObjectiveValue recompute_objective(const Instance& inst, const Solution& sol);

// Text format: header `SOLUTION p m`, one line per visit
// `day team customer task start end` sorted by (day, team, start), then END.
void write_solution(const Solution& sol, std::ostream& out);
Solution read_solution(std::istream& in);
void save_solution(const Solution& sol, const std::string& path);
Solution load_solution(const std::string& path);

}  // namespace mwsrpdt
