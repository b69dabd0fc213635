#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mwsrpdt {

// Absolute tolerance for all time comparisons, in hours.
inline constexpr double kTimeEps = 1e-9;

enum class InstanceType { A, B, C };

std::string to_string(InstanceType type);
InstanceType instance_type_from_string(const std::string& s);

struct GridPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

// One task of the service requested by `customer` (vertex in 2..n).
struct TaskRef {
  int customer = 0;
  int task = 0;
  friend auto operator<=>(const TaskRef&, const TaskRef&) = default;
};

// Vertex of the extended graph: the depot (vertex 1) or a (customer, task)
// pair. The depot is encoded as customer == 1, task == -1.
struct ExtendedVertex {
  int customer = 1;
  int task = -1;

  static ExtendedVertex depot() { return {1, -1}; }
  static ExtendedVertex of(TaskRef r) { return {r.customer, r.task}; }

  bool is_depot() const { return customer == 1; }
  TaskRef ref() const { return {customer, task}; }

  friend auto operator<=>(const ExtendedVertex&, const ExtendedVertex&) = default;
};

// A moment within a day of the planning horizon. Days are 1-based; moment is
// hours within the day, in [0, D]. Absolute hours = (day - 1) * D + moment.
struct TimePoint {
  int day = 0;
  double moment = 0.0;

  double absolute_hours(double day_length) const {
    return (day - 1) * day_length + moment;
  }

  friend auto operator<=>(const TimePoint&, const TimePoint&) = default;
};

// Precedence arc: task `after` may start only once task `before` completed.
struct Dependency {
  int after = 0;
  int before = 0;
  friend bool operator==(const Dependency&, const Dependency&) = default;
};

// A service is a DAG of tasks; tasks are ids 0..num_tasks-1.
struct Service {
  int id = 0;
  int num_tasks = 0;
  std::vector<Dependency> deps;
  friend bool operator==(const Service&, const Service&) = default;
};

// Problem instance. Producers fill the public fields and call finalize(),
// which validates invariants and builds derived lookups; the value is treated
// as immutable afterwards.
struct Instance {
  int n = 0;                // vertices including the depot (vertex 1)
  int num_teams = 0;        // K
  double day_length = 0.0;  // D, hours
  InstanceType type = InstanceType::A;
  std::uint64_t seed = 0;
  std::vector<GridPoint> coords;  // coords[v - 1] for v = 1..n
  std::vector<Service> services;
  std::vector<int> requested;  // requested[i - 2] = service id of customer i
  // times[k - 1][s][a] = duration of task a of service s for team k;
  // nullopt means the team cannot execute the task (never a large float).
  std::vector<std::vector<std::vector<std::optional<double>>>> times;

  // Validates all structural invariants (throws InvalidInstanceError) and
  // builds the derived task index / dependency adjacency below.
  void finalize();

  const Service& service_of(int customer) const {
    return services[static_cast<std::size_t>(requested[customer - 2])];
  }
  std::optional<double> task_time(int team, TaskRef r) const {
    return times[team - 1][static_cast<std::size_t>(requested[r.customer - 2])]
                [static_cast<std::size_t>(r.task)];
  }

  // Tasks of all customers enumerated in (customer, task) order.
  int task_count() const { return total_tasks_; }
  int task_index(TaskRef r) const {
    return task_offset_[r.customer - 2] + r.task;
  }
  TaskRef task_at(int index) const { return task_refs_[static_cast<std::size_t>(index)]; }

  // Within-service adjacency of the customer's requested service.
  const std::vector<int>& prerequisites(TaskRef r) const {
    return service_graphs_[static_cast<std::size_t>(requested[r.customer - 2])]
        .before[static_cast<std::size_t>(r.task)];
  }
  const std::vector<int>& dependents(TaskRef r) const {
    return service_graphs_[static_cast<std::size_t>(requested[r.customer - 2])]
        .after[static_cast<std::size_t>(r.task)];
  }

  // Manhattan travel time in hours between vertices u, v in 1..n at 40 km/h
  // over a grid whose unit step is 0.1 km.
  double travel_time(int u, int v) const;
  // Travel time on the extended graph: zero between vertices of the same
  // customer (and depot-to-depot), base travel otherwise.
  double extended_travel_time(ExtendedVertex u, ExtendedVertex v) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.n == b.n && a.num_teams == b.num_teams &&
           a.day_length == b.day_length && a.type == b.type && a.seed == b.seed &&
           a.coords == b.coords && a.services == b.services &&
           a.requested == b.requested && a.times == b.times;
  }

 private:
  struct ServiceGraph {
    std::vector<std::vector<int>> before;  // before[a] = tasks a depends on
    std::vector<std::vector<int>> after;   // after[b]  = tasks depending on b
  };
  std::vector<ServiceGraph> service_graphs_;
  std::vector<int> task_offset_;  // per customer 2..n
  std::vector<TaskRef> task_refs_;
  int total_tasks_ = 0;
};

// One execution of a task by a team. start/end are moments within `day`.
struct Visit {
  int team = 0;
  int day = 0;
  TaskRef task;
  double start = 0.0;
  double end = 0.0;
  friend bool operator==(const Visit&, const Visit&) = default;
};

// A complete schedule. `days` is the makespan p; `last_moment` is m, the
// completion moment of the last task on day p. Routes are implied by
// (team, day, start) ordering of the visits.
struct Solution {
  std::vector<Visit> visits;
  int days = 0;
  double last_moment = 0.0;
  friend bool operator==(const Solution&, const Solution&) = default;
};

// Objective triple: fractional = days - 1 + last_moment / D.
struct ObjectiveValue {
  int days = 0;
  double last_moment = 0.0;
  double fractional = 0.0;
};

// Recomputes (p, m, f') from the visit list; throws EmptySolutionError when
// the solution has no visits.
ObjectiveValue evaluate(const Instance& inst, const Solution& sol);

}  // namespace mwsrpdt
