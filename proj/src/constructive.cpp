#include "mwsrpdt/constructive.hpp"

#include <algorithm>
#include <cmath>

#include "mwsrpdt/errors.hpp"

namespace mwsrpdt {

void collect_candidates(const Instance& inst, int team, ExtendedVertex position, double q,
                        int day, std::span<const char> pending,
                        std::span<const std::optional<TimePoint>> open,
                        std::vector<Candidate>& out) {
  out.clear();
  const ExtendedVertex depot = ExtendedVertex::depot();
  const int total = inst.task_count();
  for (int t = 0; t < total; ++t) {
    if (!pending[static_cast<std::size_t>(t)]) continue;
    const auto& opened = open[static_cast<std::size_t>(t)];
    if (!opened) continue;  // dependencies incomplete
    const TaskRef ref = inst.task_at(t);
    const auto duration = inst.task_time(team, ref);
    if (!duration) continue;  // team cannot execute this task
    // Tasks opened on an earlier day are available from moment 0; tasks
    // opened today are available from their opening moment (waiting allowed).
    const double available_from = opened->day == day ? opened->moment : 0.0;
    const ExtendedVertex vertex = ExtendedVertex::of(ref);
    const double start =
        std::max(q + inst.extended_travel_time(position, vertex), available_from);
    const double end = start + *duration;
    if (end + inst.extended_travel_time(vertex, depot) <= inst.day_length + kTimeEps)
      out.push_back({ref, start, end});
  }
}

Event pop_min_event(std::vector<Event>& events) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < events.size(); ++i) {
    const bool earlier = events[i].completion < events[best].completion;
    const bool tie = events[i].completion == events[best].completion &&
                     events[i].team < events[best].team;
    if (earlier || tie) best = i;
  }
  Event ev = events[best];
  events.erase(events.begin() + static_cast<std::ptrdiff_t>(best));
  return ev;
}

ConstructionResult construct(const Instance& inst, const SelectionRule& rule) {
  const int total = inst.task_count();
  std::vector<char> pending(static_cast<std::size_t>(total), 1);
  std::vector<std::optional<TimePoint>> open(static_cast<std::size_t>(total));
  std::vector<std::optional<TimePoint>> completed(static_cast<std::size_t>(total));
  for (int t = 0; t < total; ++t)
    if (inst.prerequisites(inst.task_at(t)).empty())
      open[static_cast<std::size_t>(t)] = TimePoint{0, 0.0};

  ConstructionResult result;
  int remaining = total;
  int day = 0;
  std::vector<Event> events;
  std::vector<Candidate> candidates;
  while (remaining > 0) {
    ++day;
    events.clear();
    for (int k = 1; k <= inst.num_teams; ++k)
      events.push_back({0.0, k, ExtendedVertex::depot()});
    int executed_today = 0;
    while (!events.empty()) {
      const Event ev = pop_min_event(events);
      collect_candidates(inst, ev.team, ev.position, ev.completion, day, pending, open,
                         candidates);
      if (candidates.empty()) {
        // Return to the depot for the rest of the day; the team re-enters
        // only via completion events, so it does not re-dispatch today.
        result.decisions.push_back({ev.team, day, ev.position, ExtendedVertex::depot()});
        continue;
      }
      const std::size_t pick = rule({ev.team, ev.position, day}, candidates);
      if (pick >= candidates.size())
        throw Error("selection rule returned index " + std::to_string(pick) + " for " +
                    std::to_string(candidates.size()) + " candidates");
      const Candidate chosen = candidates[pick];
      const int t = inst.task_index(chosen.task);
      result.solution.visits.push_back({ev.team, day, chosen.task, chosen.start, chosen.end});
      result.decisions.push_back({ev.team, day, ev.position, ExtendedVertex::of(chosen.task)});
      pending[static_cast<std::size_t>(t)] = 0;
      --remaining;
      ++executed_today;
      completed[static_cast<std::size_t>(t)] = TimePoint{day, chosen.end};
      // A dependent task opens at the maximum completion of its dependencies
      // once the last of them finishes.
      for (int c : inst.dependents(chosen.task)) {
        const TaskRef cref{chosen.task.customer, c};
        TimePoint latest{0, 0.0};
        bool all_complete = true;
        for (int b : inst.prerequisites(cref)) {
          const auto& done = completed[static_cast<std::size_t>(inst.task_index({cref.customer, b}))];
          if (!done) {
            all_complete = false;
            break;
          }
          latest = std::max(latest, *done);
        }
        if (all_complete) open[static_cast<std::size_t>(inst.task_index(cref))] = latest;
      }
      events.push_back({chosen.end, ev.team, ExtendedVertex::of(chosen.task)});
    }
    if (executed_today == 0 && remaining > 0)
      throw StalledDayError("day " + std::to_string(day) + " executed no tasks while " +
                            std::to_string(remaining) + " remain; some task cannot fit in a workday");
  }

  result.solution.days = day;
  double last = 0.0;
  for (const Visit& v : result.solution.visits)
    if (v.day == day) last = std::max(last, v.end);
  result.solution.last_moment = last;
  return result;
}

std::size_t greedy_rule(const SelectionContext&, std::span<const Candidate> candidates) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double diff = candidates[i].end - candidates[best].end;
    if (diff < -kTimeEps ||
        (std::abs(diff) <= kTimeEps && candidates[i].task < candidates[best].task))
      best = i;
  }
  return best;
}

Solution construct_greedy(const Instance& inst) {
  return construct(inst, greedy_rule).solution;
}

}  // namespace mwsrpdt
