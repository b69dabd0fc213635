// Shared fixtures: hand-built instances with exactly controlled geometry,
// times, and dependencies, plus a deterministic pool of tiny instances small
// enough for the exact solver.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mwsrpdt/errors.hpp"
#include "mwsrpdt/instances.hpp"
#include "mwsrpdt/types.hpp"

namespace testsupport {

using namespace mwsrpdt;

// Task durations of one service for one team; nullopt = cannot execute.
using TimeRow = std::vector<std::optional<double>>;
// TimeRow per service, for one team.
using TeamTimes = std::vector<TimeRow>;

inline constexpr std::optional<double> kInf = std::nullopt;

// One customer requesting one service. team_times[k][a] is the duration of
// task a for team k+1. The depot sits at the origin; the customer at
// `customer_at` (default travel 0.05 h each way).
inline Instance single_customer(std::vector<TimeRow> team_times,
                                std::vector<Dependency> deps = {},
                                GridPoint customer_at = {10, 10}, double day_length = 8.0) {
  Instance inst;
  inst.n = 2;
  inst.num_teams = static_cast<int>(team_times.size());
  inst.day_length = day_length;
  inst.type = InstanceType::A;
  inst.seed = 0;
  inst.coords = {{0, 0}, customer_at};
  const int num_tasks = static_cast<int>(team_times.front().size());
  inst.services = {Service{0, num_tasks, std::move(deps)}};
  inst.requested = {0};
  inst.times.reserve(team_times.size());
  for (TimeRow& row : team_times) inst.times.push_back({std::move(row)});
  inst.finalize();
  return inst;
}

// General builder: customer i+2 sits at customer_coords[i] and requests
// service requested[i]; times[k][s][a] as in Instance.
inline Instance build_instance(int num_teams, double day_length,
                               std::vector<GridPoint> customer_coords,
                               std::vector<Service> services, std::vector<int> requested,
                               std::vector<TeamTimes> times) {
  Instance inst;
  inst.n = 1 + static_cast<int>(customer_coords.size());
  inst.num_teams = num_teams;
  inst.day_length = day_length;
  inst.type = InstanceType::A;
  inst.seed = 0;
  inst.coords.push_back({0, 0});
  for (GridPoint p : customer_coords) inst.coords.push_back(p);
  inst.services = std::move(services);
  inst.requested = std::move(requested);
  inst.times = std::move(times);
  inst.finalize();
  return inst;
}

// Keeps only the first new_k teams. Throws InvalidInstanceError when a task
// loses its last capable team.
inline Instance truncate_teams(const Instance& src, int new_k) {
  Instance inst = src;
  inst.num_teams = new_k;
  inst.times.resize(static_cast<std::size_t>(new_k));
  inst.finalize();
  return inst;
}

// Deterministic pool of instances with at most `max_tasks` tasks and at most
// 2 teams: a fixed hand-built batch plus generator draws truncated to 2 teams
// (skipping draws where truncation strands a task).
inline std::vector<Instance> tiny_pool(std::size_t count, int max_tasks = 6) {
  std::vector<Instance> pool;

  pool.push_back(single_customer({TimeRow{1.0}}));
  pool.push_back(single_customer({TimeRow{5.0, 5.0}, TimeRow{5.0, 5.0}}));
  pool.push_back(single_customer({TimeRow{5.0, 5.0}, TimeRow{5.0, 5.0}}, {{1, 0}}));
  pool.push_back(
      single_customer({TimeRow{2.0, 1.0, 0.5}, TimeRow{1.0, 2.0, 4.0}}, {{2, 0}, {2, 1}}));
  pool.push_back(single_customer({TimeRow{2.0, kInf}, TimeRow{kInf, 3.0}}, {{1, 0}}, {40, 0}));
  pool.push_back(
      single_customer({TimeRow{0.25, 0.5, 0.75, 1.0}, TimeRow{1.0, 0.75, 0.5, 0.25}}));
  pool.push_back(build_instance(2, 8.0, {{20, 0}, {0, 30}},
                                {Service{0, 1, {}}, Service{1, 2, {{1, 0}}}}, {0, 1},
                                {TeamTimes{TimeRow{2.0}, TimeRow{1.0, 1.0}},
                                 TeamTimes{TimeRow{2.0}, TimeRow{1.5, 0.5}}}));
  pool.push_back(build_instance(2, 8.0, {{10, 10}, {10, 10}}, {Service{0, 2, {}}}, {0, 0},
                                {TeamTimes{TimeRow{4.0, 4.0}}, TeamTimes{TimeRow{4.0, 4.0}}}));

  const InstanceType types[] = {InstanceType::A, InstanceType::B, InstanceType::C};
  for (std::uint64_t seed = 1; pool.size() < count && seed < 500; ++seed) {
    for (InstanceType type : types) {
      for (int n = 2; n <= 3; ++n) {
        if (pool.size() >= count) break;
        const Instance inst = generate(GeneratorConfig{n, type, seed});
        if (inst.task_count() > max_tasks) continue;
        try {
          pool.push_back(truncate_teams(inst, 2));
        } catch (const InvalidInstanceError&) {
          // a task's only capable team was dropped; skip this draw
        }
      }
    }
  }
  return pool;
}

}  // namespace testsupport
