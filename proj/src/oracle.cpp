#include "mwsrpdt/oracle.hpp"

#include <algorithm>
#include <chrono>

#include "mwsrpdt/constructive.hpp"
#include "mwsrpdt/errors.hpp"

namespace mwsrpdt {

namespace {

struct SearchState {
  std::vector<char> pending;
  std::vector<std::optional<TimePoint>> open;
  std::vector<std::optional<TimePoint>> completed;
  std::vector<Event> events;
  std::vector<Visit> visits;
  int remaining = 0;
  int day = 1;
  int executed_today = 0;
  double day_max_end = 0.0;  // latest completion among the current day's visits
};

class Searcher {
 public:
  Searcher(const Instance& inst, const OracleLimits& limits)
      : inst_(inst), limits_(limits), begun_(std::chrono::steady_clock::now()) {}

  OracleResult run() {
    const int total = inst_.task_count();
    SearchState root;
    root.pending.assign(static_cast<std::size_t>(total), 1);
    root.open.resize(static_cast<std::size_t>(total));
    root.completed.resize(static_cast<std::size_t>(total));
    for (int t = 0; t < total; ++t)
      if (inst_.prerequisites(inst_.task_at(t)).empty())
        root.open[static_cast<std::size_t>(t)] = TimePoint{0, 0.0};
    root.remaining = total;
    for (int k = 1; k <= inst_.num_teams; ++k)
      root.events.push_back({0.0, k, ExtendedVertex::depot()});
    dfs(std::move(root));
    if (!found_)
      throw StalledDayError("no feasible schedule: some task cannot fit in a workday");
    OracleResult result;
    result.optimal = best_objective_;
    result.solution = std::move(best_);
    result.nodes_explored = nodes_;
    return result;
  }

 private:
  void dfs(SearchState st) {
    for (;;) {
      tick();
      // Any completion of this branch has p >= day; if p == day then
      // m >= day_max_end, so (day - 1) + day_max_end / D bounds f' below.
      if (found_) {
        const double bound = (st.day - 1) + st.day_max_end / inst_.day_length;
        if (bound >= best_objective_.fractional - 1e-12) return;
      }
      if (st.remaining == 0) {
        offer(st);
        return;
      }
      if (st.events.empty()) {
        if (st.executed_today == 0) return;  // dead branch: a full day ran nothing
        ++st.day;
        st.executed_today = 0;
        st.day_max_end = 0.0;
        for (int k = 1; k <= inst_.num_teams; ++k)
          st.events.push_back({0.0, k, ExtendedVertex::depot()});
        continue;
      }
      const Event ev = pop_min_event(st.events);
      collect_candidates(inst_, ev.team, ev.position, ev.completion, st.day, st.pending,
                         st.open, candidates_);
      if (candidates_.empty()) continue;  // team returns to the depot for the day
      if (candidates_.size() == 1) {
        apply(st, ev, candidates_.front());
        continue;
      }
      const std::vector<Candidate> branches = candidates_;  // buffer reused below
      for (const Candidate& choice : branches) {
        SearchState copy = st;
        apply(copy, ev, choice);
        dfs(std::move(copy));
      }
      return;
    }
  }

  // Mirrors one execution step of the constructive heuristic.
  void apply(SearchState& st, const Event& ev, const Candidate& chosen) {
    const int t = inst_.task_index(chosen.task);
    st.visits.push_back({ev.team, st.day, chosen.task, chosen.start, chosen.end});
    st.pending[static_cast<std::size_t>(t)] = 0;
    --st.remaining;
    ++st.executed_today;
    st.day_max_end = std::max(st.day_max_end, chosen.end);
    st.completed[static_cast<std::size_t>(t)] = TimePoint{st.day, chosen.end};
    for (int c : inst_.dependents(chosen.task)) {
      const TaskRef cref{chosen.task.customer, c};
      TimePoint latest{0, 0.0};
      bool all_complete = true;
      for (int b : inst_.prerequisites(cref)) {
        const auto& done =
            st.completed[static_cast<std::size_t>(inst_.task_index({cref.customer, b}))];
        if (!done) {
          all_complete = false;
          break;
        }
        latest = std::max(latest, *done);
      }
      if (all_complete) st.open[static_cast<std::size_t>(inst_.task_index(cref))] = latest;
    }
    st.events.push_back({chosen.end, ev.team, ExtendedVertex::of(chosen.task)});
  }

  void offer(const SearchState& st) {
    const ObjectiveValue objective{
        st.day, st.day_max_end,
        static_cast<double>(st.day - 1) + st.day_max_end / inst_.day_length};
    if (!found_ || objective.fractional < best_objective_.fractional - 1e-12) {
      found_ = true;
      best_objective_ = objective;
      best_.visits = st.visits;
      best_.days = st.day;
      best_.last_moment = st.day_max_end;
    }
  }

  void tick() {
    ++nodes_;
    if (limits_.max_nodes > 0 && nodes_ > limits_.max_nodes)
      throw BudgetExceededError("exact search exceeded " + std::to_string(limits_.max_nodes) +
                                " nodes");
    if (limits_.wall_clock_seconds > 0.0 && (nodes_ & 0x3ff) == 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - begun_;
      if (elapsed.count() > limits_.wall_clock_seconds)
        throw BudgetExceededError("exact search exceeded the wall-clock limit");
    }
  }

  const Instance& inst_;
  OracleLimits limits_;
  std::chrono::steady_clock::time_point begun_;
  std::vector<Candidate> candidates_;
  std::uint64_t nodes_ = 0;
  bool found_ = false;
  ObjectiveValue best_objective_;
  Solution best_;
};

}  // namespace

OracleResult solve_exact(const Instance& inst, const OracleLimits& limits) {
  if (limits.max_tasks < 1) throw InvalidConfigError("max_tasks must be positive");
  if (inst.task_count() > limits.max_tasks)
    throw InvalidConfigError("instance has " + std::to_string(inst.task_count()) +
                             " tasks; the exact solver accepts at most " +
                             std::to_string(limits.max_tasks));
  if (inst.num_teams > 3)
    throw InvalidConfigError("the exact solver accepts at most 3 teams");
  return Searcher(inst, limits).run();
}

}  // namespace mwsrpdt
