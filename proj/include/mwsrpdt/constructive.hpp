#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mwsrpdt/types.hpp"

namespace mwsrpdt {

// A task a team could execute next from its current position: start/end are
// moments within the current day and already include travel and any waiting
// for the task to open; end + return travel fits in the day.
struct Candidate {
  TaskRef task;
  double start = 0.0;
  double end = 0.0;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Where a selection decision is being made.
struct SelectionContext {
  int team = 0;
  ExtendedVertex position;
  int day = 0;
};

// Maps a decision point to the index of the chosen candidate; must return a
// value < candidates.size().
using SelectionRule =
    std::function<std::size_t(const SelectionContext&, std::span<const Candidate>)>;

// A team becoming free at `completion` (a moment within the current day) at
// `position`; the dispatch queue of one scheduling day.
struct Event {
  double completion = 0.0;
  int team = 0;
  ExtendedVertex position;
};

// Removes and returns the event minimal by (completion, team ascending); the
// deterministic pop order shared by construct() and the exact solver.
Event pop_min_event(std::vector<Event>& events);

// One move of the construction: a team travelled from `from` to `to` (to is
// the depot for end-of-day returns). The decision sequence replays to the
// exact same solution.
struct Decision {
  int team = 0;
  int day = 0;
  ExtendedVertex from;
  ExtendedVertex to;
  friend bool operator==(const Decision&, const Decision&) = default;
};

struct ConstructionResult {
  Solution solution;
  std::vector<Decision> decisions;
};

// Discrete-event constructive heuristic. Each day every team starts at the
// depot at moment 0; the event queue pops the (completion, team)-minimal
// event; the team picks among candidates via `rule` or returns to the depot
// for the rest of the day when none fits. A task opens when all its
// dependencies are complete and may start no earlier than their maximum
// completion TimePoint. Throws StalledDayError if a day passes executing
// nothing while tasks remain.
ConstructionResult construct(const Instance& inst, const SelectionRule& rule);

// Builds the candidate list for a team at `position` free at moment `q` of
// `day`. pending[t] marks unexecuted tasks; open[t] is the TimePoint from
// which task t may start (unset while dependencies are incomplete). Shared by
// the exact solver so both explore exactly the same moves.
void collect_candidates(const Instance& inst, int team, ExtendedVertex position, double q,
                        int day, std::span<const char> pending,
                        std::span<const std::optional<TimePoint>> open,
                        std::vector<Candidate>& out);

// Picks the candidate with the smallest end; ties broken by (customer, task).
std::size_t greedy_rule(const SelectionContext& ctx, std::span<const Candidate> candidates);

// construct() with greedy_rule.
Solution construct_greedy(const Instance& inst);

}  // namespace mwsrpdt
