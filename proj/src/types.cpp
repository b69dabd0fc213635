#include "mwsrpdt/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "mwsrpdt/errors.hpp"

namespace mwsrpdt {

std::string to_string(InstanceType type) {
  switch (type) {
    case InstanceType::A: return "A";
    case InstanceType::B: return "B";
    case InstanceType::C: return "C";
  }
  return "?";
}

InstanceType instance_type_from_string(const std::string& s) {
  if (s == "A") return InstanceType::A;
  if (s == "B") return InstanceType::B;
  if (s == "C") return InstanceType::C;
  throw InvalidConfigError("unknown instance type: '" + s + "' (expected A, B, or C)");
}

double Instance::travel_time(int u, int v) const {
  const GridPoint& a = coords[static_cast<std::size_t>(u - 1)];
  const GridPoint& b = coords[static_cast<std::size_t>(v - 1)];
  return 0.1 * (std::abs(a.x - b.x) + std::abs(a.y - b.y)) / 40.0;
}

double Instance::extended_travel_time(ExtendedVertex u, ExtendedVertex v) const {
  if (u.customer == v.customer) return 0.0;
  return travel_time(u.customer, v.customer);
}

namespace {

// Kahn's algorithm; true iff the dependency arcs of `svc` form a DAG.
bool is_dag(const Service& svc) {
  std::vector<int> indegree(static_cast<std::size_t>(svc.num_tasks), 0);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(svc.num_tasks));
  for (const Dependency& d : svc.deps) {
    out[static_cast<std::size_t>(d.before)].push_back(d.after);
    ++indegree[static_cast<std::size_t>(d.after)];
  }
  std::vector<int> ready;
  for (int a = 0; a < svc.num_tasks; ++a)
    if (indegree[static_cast<std::size_t>(a)] == 0) ready.push_back(a);
  int seen = 0;
  while (!ready.empty()) {
    int b = ready.back();
    ready.pop_back();
    ++seen;
    for (int a : out[static_cast<std::size_t>(b)])
      if (--indegree[static_cast<std::size_t>(a)] == 0) ready.push_back(a);
  }
  return seen == svc.num_tasks;
}

}  // namespace

void Instance::finalize() {
  if (n < 2) throw InvalidInstanceError("instance needs a depot and at least one customer (n >= 2)");
  if (num_teams < 1) throw InvalidInstanceError("instance needs at least one team");
  if (!(day_length > 0.0)) throw InvalidInstanceError("day length must be positive");
  if (coords.size() != static_cast<std::size_t>(n))
    throw InvalidInstanceError("expected one coordinate pair per vertex");
  for (const GridPoint& g : coords)
    if (g.x < 0 || g.x > 100 || g.y < 0 || g.y > 100)
      throw InvalidInstanceError("coordinates must lie on the 100x100 grid");
  if (services.empty()) throw InvalidInstanceError("instance needs at least one service");
  for (std::size_t s = 0; s < services.size(); ++s) {
    const Service& svc = services[s];
    if (svc.id != static_cast<int>(s))
      throw InvalidInstanceError("service ids must be 0..S-1 in order");
    if (svc.num_tasks < 1)
      throw InvalidInstanceError("service " + std::to_string(svc.id) + " has no tasks");
    for (const Dependency& d : svc.deps) {
      if (d.after < 0 || d.after >= svc.num_tasks || d.before < 0 || d.before >= svc.num_tasks)
        throw InvalidInstanceError("dependency endpoint outside service " + std::to_string(svc.id));
      if (d.after == d.before)
        throw InvalidInstanceError("self-dependency in service " + std::to_string(svc.id));
    }
    for (std::size_t i = 0; i < svc.deps.size(); ++i)
      for (std::size_t j = i + 1; j < svc.deps.size(); ++j)
        if (svc.deps[i] == svc.deps[j])
          throw InvalidInstanceError("duplicate dependency in service " + std::to_string(svc.id));
    if (!is_dag(svc))
      throw InvalidInstanceError("dependency cycle in service " + std::to_string(svc.id));
  }
  if (requested.size() != static_cast<std::size_t>(n - 1))
    throw InvalidInstanceError("expected one requested service per customer");
  for (int sid : requested)
    if (sid < 0 || sid >= static_cast<int>(services.size()))
      throw InvalidInstanceError("requested service id out of range");
  if (times.size() != static_cast<std::size_t>(num_teams))
    throw InvalidInstanceError("expected one task-time table per team");
  for (const auto& per_team : times) {
    if (per_team.size() != services.size())
      throw InvalidInstanceError("task-time table must cover every service");
    for (std::size_t s = 0; s < per_team.size(); ++s) {
      if (per_team[s].size() != static_cast<std::size_t>(services[s].num_tasks))
        throw InvalidInstanceError("task-time table must cover every task of service " +
                                   std::to_string(services[s].id));
      for (const std::optional<double>& t : per_team[s])
        if (t && !(*t > 0.0 && std::isfinite(*t)))
          throw InvalidInstanceError("task times must be positive and finite");
    }
  }
  // Every requested task must be executable by at least one team.
  for (int customer = 2; customer <= n; ++customer) {
    const Service& svc = services[static_cast<std::size_t>(requested[static_cast<std::size_t>(customer - 2)])];
    for (int a = 0; a < svc.num_tasks; ++a) {
      bool executable = false;
      for (int k = 1; k <= num_teams && !executable; ++k)
        executable = task_time(k, {customer, a}).has_value();
      if (!executable)
        throw InvalidInstanceError("task " + std::to_string(a) + " of customer " +
                                   std::to_string(customer) + " has no capable team");
    }
  }

  service_graphs_.assign(services.size(), {});
  for (std::size_t s = 0; s < services.size(); ++s) {
    ServiceGraph& g = service_graphs_[s];
    g.before.assign(static_cast<std::size_t>(services[s].num_tasks), {});
    g.after.assign(static_cast<std::size_t>(services[s].num_tasks), {});
    for (const Dependency& d : services[s].deps) {
      g.before[static_cast<std::size_t>(d.after)].push_back(d.before);
      g.after[static_cast<std::size_t>(d.before)].push_back(d.after);
    }
    for (auto& v : g.before) std::sort(v.begin(), v.end());
    for (auto& v : g.after) std::sort(v.begin(), v.end());
  }

  task_offset_.assign(static_cast<std::size_t>(n - 1), 0);
  task_refs_.clear();
  total_tasks_ = 0;
  for (int customer = 2; customer <= n; ++customer) {
    task_offset_[static_cast<std::size_t>(customer - 2)] = total_tasks_;
    const Service& svc = service_of(customer);
    for (int a = 0; a < svc.num_tasks; ++a) task_refs_.push_back({customer, a});
    total_tasks_ += svc.num_tasks;
  }
}

ObjectiveValue evaluate(const Instance& inst, const Solution& sol) {
  if (sol.visits.empty()) throw EmptySolutionError("cannot evaluate a solution with no visits");
  int p = 0;
  for (const Visit& v : sol.visits) p = std::max(p, v.day);
  double m = 0.0;
  for (const Visit& v : sol.visits)
    if (v.day == p) m = std::max(m, v.end);
  return {p, m, static_cast<double>(p - 1) + m / inst.day_length};
}

}  // namespace mwsrpdt
