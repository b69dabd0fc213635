#include "mwsrpdt/validate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "mwsrpdt/errors.hpp"
#include "text_io.hpp"

namespace mwsrpdt {

std::string to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::Malformed: return "MALFORMED";
    case ViolationCode::Coverage: return "COVERAGE";
    case ViolationCode::DepotDeparture: return "DEPOT_DEPARTURE";
    case ViolationCode::Travel: return "TRAVEL";
    case ViolationCode::DayLength: return "DAY_LENGTH";
    case ViolationCode::TaskTime: return "TASK_TIME";
    case ViolationCode::Precedence: return "PRECEDENCE";
    case ViolationCode::Makespan: return "MAKESPAN";
  }
  return "?";
}

namespace {

std::string describe(const TaskRef& r) {
  return "customer " + std::to_string(r.customer) + " task " + std::to_string(r.task);
}

}  // namespace

FeasibilityReport check_feasible(const Instance& inst, const Solution& sol) {
  FeasibilityReport report;
  auto flag = [&report](ViolationCode code, std::optional<int> team, std::optional<int> day,
                        std::optional<TaskRef> task, std::string detail) {
    report.violations.push_back({code, team, day, task, std::move(detail)});
  };

  // Structural pass: a visit whose fields are outside their domains is
  // excluded from the route/coverage analysis below.
  std::vector<const Visit*> good;
  for (const Visit& v : sol.visits) {
    bool sound = true;
    if (v.team < 1 || v.team > inst.num_teams) {
      flag(ViolationCode::Malformed, v.team, v.day, v.task,
           "team index " + std::to_string(v.team) + " outside 1.." +
               std::to_string(inst.num_teams));
      sound = false;
    }
    if (v.day < 1) {
      flag(ViolationCode::Malformed, v.team, v.day, v.task,
           "day " + std::to_string(v.day) + " is not positive");
      sound = false;
    }
    if (!std::isfinite(v.start) || !std::isfinite(v.end) || v.end < v.start - kTimeEps ||
        v.start < -kTimeEps || v.end > inst.day_length + kTimeEps) {
      flag(ViolationCode::Malformed, v.team, v.day, v.task,
           "start/end moments outside [0, D] or inverted");
      sound = false;
    }
    if (v.task.customer < 2 || v.task.customer > inst.n) {
      flag(ViolationCode::Coverage, v.team, v.day, v.task,
           "visit names unknown customer " + std::to_string(v.task.customer));
      sound = false;
    } else if (v.task.task < 0 || v.task.task >= inst.service_of(v.task.customer).num_tasks) {
      flag(ViolationCode::Coverage, v.team, v.day, v.task,
           "visit names unknown task of customer " + std::to_string(v.task.customer));
      sound = false;
    }
    if (sound) good.push_back(&v);
  }

  // Coverage: every instance task in exactly one visit.
  std::vector<int> count(static_cast<std::size_t>(inst.task_count()), 0);
  for (const Visit* v : good) ++count[static_cast<std::size_t>(inst.task_index(v->task))];
  for (int t = 0; t < inst.task_count(); ++t) {
    const TaskRef ref = inst.task_at(t);
    if (count[static_cast<std::size_t>(t)] == 0)
      flag(ViolationCode::Coverage, std::nullopt, std::nullopt, ref,
           describe(ref) + " is never executed");
    else if (count[static_cast<std::size_t>(t)] > 1)
      flag(ViolationCode::Coverage, std::nullopt, std::nullopt, ref,
           describe(ref) + " is executed " + std::to_string(count[static_cast<std::size_t>(t)]) +
               " times");
  }

  // Task durations must match the executing team's time, which must be finite.
  for (const Visit* v : good) {
    const auto duration = inst.task_time(v->team, v->task);
    if (!duration) {
      flag(ViolationCode::TaskTime, v->team, v->day, v->task,
           "team " + std::to_string(v->team) + " cannot execute " + describe(v->task));
    } else if (std::abs((v->end - v->start) - *duration) > kTimeEps) {
      flag(ViolationCode::TaskTime, v->team, v->day, v->task,
           "duration " + detail::format_double(v->end - v->start) + " differs from task time " +
               detail::format_double(*duration));
    }
  }

  // Route checks per (team, day): reconstruct the sequence from start times.
  std::map<std::pair<int, int>, std::vector<const Visit*>> routes;
  for (const Visit* v : good) routes[{v->team, v->day}].push_back(v);
  const ExtendedVertex depot = ExtendedVertex::depot();
  for (auto& [key, route] : routes) {
    const auto [team, day] = key;
    std::sort(route.begin(), route.end(), [](const Visit* a, const Visit* b) {
      if (a->start != b->start) return a->start < b->start;
      if (a->end != b->end) return a->end < b->end;
      return a->task < b->task;
    });
    const Visit* first = route.front();
    const double depart = inst.extended_travel_time(depot, ExtendedVertex::of(first->task));
    if (first->start < depart - kTimeEps)
      flag(ViolationCode::DepotDeparture, team, day, first->task,
           "first visit starts at " + detail::format_double(first->start) +
               " before depot travel " + detail::format_double(depart));
    for (std::size_t i = 1; i < route.size(); ++i) {
      const Visit* prev = route[i - 1];
      const Visit* next = route[i];
      const double travel = inst.extended_travel_time(ExtendedVertex::of(prev->task),
                                                      ExtendedVertex::of(next->task));
      if (next->start < prev->end + travel - kTimeEps)
        flag(ViolationCode::Travel, team, day, next->task,
             describe(next->task) + " starts at " + detail::format_double(next->start) +
                 " before " + describe(prev->task) + " ends at " +
                 detail::format_double(prev->end) + " plus travel " +
                 detail::format_double(travel));
    }
    const Visit* last = route.back();
    const double retreat = inst.extended_travel_time(ExtendedVertex::of(last->task), depot);
    if (last->end + retreat > inst.day_length + kTimeEps)
      flag(ViolationCode::DayLength, team, day, last->task,
           "last visit ends at " + detail::format_double(last->end) + " and return travel " +
               detail::format_double(retreat) + " exceeds the day length " +
               detail::format_double(inst.day_length));
  }

  // Precedence in absolute hours, only between uniquely-covered tasks.
  for (int customer = 2; customer <= inst.n; ++customer) {
    const Service& svc = inst.service_of(customer);
    std::vector<const Visit*> by_task(static_cast<std::size_t>(svc.num_tasks), nullptr);
    for (const Visit* v : good)
      if (v->task.customer == customer &&
          count[static_cast<std::size_t>(inst.task_index(v->task))] == 1)
        by_task[static_cast<std::size_t>(v->task.task)] = v;
    for (const Dependency& d : svc.deps) {
      const Visit* after = by_task[static_cast<std::size_t>(d.after)];
      const Visit* before = by_task[static_cast<std::size_t>(d.before)];
      if (!after || !before) continue;
      const double start_after = (after->day - 1) * inst.day_length + after->start;
      const double end_before = (before->day - 1) * inst.day_length + before->end;
      if (start_after < end_before - kTimeEps)
        flag(ViolationCode::Precedence, std::nullopt, std::nullopt, after->task,
             describe(after->task) + " starts at absolute " +
                 detail::format_double(start_after) + " before its dependency " +
                 describe(before->task) + " completes at " + detail::format_double(end_before));
    }
  }

  // Stored makespan fields must match a recomputation over the visit list.
  if (!good.empty()) {
    int p = 0;
    for (const Visit* v : good) p = std::max(p, v->day);
    double m = 0.0;
    for (const Visit* v : good)
      if (v->day == p) m = std::max(m, v->end);
    if (sol.days != p)
      flag(ViolationCode::Makespan, std::nullopt, std::nullopt, std::nullopt,
           "stored day count " + std::to_string(sol.days) + " differs from recomputed " +
               std::to_string(p));
    if (std::abs(sol.last_moment - m) > kTimeEps)
      flag(ViolationCode::Makespan, std::nullopt, std::nullopt, std::nullopt,
           "stored last moment " + detail::format_double(sol.last_moment) +
               " differs from recomputed " + detail::format_double(m));
  }

  report.ok = report.violations.empty();
  return report;
}

ObjectiveValue recompute_objective(const Instance& inst, const Solution& sol) {
  const FeasibilityReport report = check_feasible(inst, sol);
  if (!report.ok)
    throw InfeasibleInputError("solution has " + std::to_string(report.violations.size()) +
                               " violation(s); first: " +
                               to_string(report.violations.front().code) + " — " +
                               report.violations.front().detail);
  // Deliberately independent of core evaluate(): single pass tracking the
  // latest day and its latest completion.
  int p = 0;
  double m = 0.0;
  for (const Visit& v : sol.visits) {
    if (v.day > p) {
      p = v.day;
      m = v.end;
    } else if (v.day == p && v.end > m) {
      m = v.end;
    }
  }
  return {p, m, static_cast<double>(p - 1) + m / inst.day_length};
}

void write_solution(const Solution& sol, std::ostream& out) {
  out << "SOLUTION " << sol.days << ' ' << detail::format_double(sol.last_moment) << '\n';
  std::vector<const Visit*> ordered;
  ordered.reserve(sol.visits.size());
  for (const Visit& v : sol.visits) ordered.push_back(&v);
  std::sort(ordered.begin(), ordered.end(), [](const Visit* a, const Visit* b) {
    if (a->day != b->day) return a->day < b->day;
    if (a->team != b->team) return a->team < b->team;
    if (a->start != b->start) return a->start < b->start;
    return a->task < b->task;
  });
  for (const Visit* v : ordered)
    out << v->day << ' ' << v->team << ' ' << v->task.customer << ' ' << v->task.task << ' '
        << detail::format_double(v->start) << ' ' << detail::format_double(v->end) << '\n';
  out << "END\n";
}

Solution read_solution(std::istream& in) {
  using namespace detail;
  LineReader r(in);
  Solution sol;
  const auto& header = r.next("header 'SOLUTION p m'");
  if (header.size() != 3 || header[0] != "SOLUTION")
    throw ParseError(r.line(), "expected header 'SOLUTION p m'");
  sol.days = static_cast<int>(parse_int(r, header[1], "day count"));
  sol.last_moment = parse_double(r, header[2], "last completion moment");
  while (!r.peek_keyword("END")) {
    const auto& f = r.next("visit line 'day team customer task start end' or END");
    expect_fields(r, f, 6, "visit line 'day team customer task start end'");
    Visit v;
    v.day = static_cast<int>(parse_int(r, f[0], "day"));
    v.team = static_cast<int>(parse_int(r, f[1], "team"));
    v.task.customer = static_cast<int>(parse_int(r, f[2], "customer"));
    v.task.task = static_cast<int>(parse_int(r, f[3], "task id"));
    v.start = parse_double(r, f[4], "start time");
    v.end = parse_double(r, f[5], "end time");
    sol.visits.push_back(v);
  }
  const auto& end_kw = r.next("terminator END");
  if (end_kw.size() != 1 || end_kw[0] != "END")
    throw ParseError(r.line(), "expected terminator END");
  if (!r.exhausted()) {
    r.next("");
    throw ParseError(r.line(), "unexpected content after END");
  }
  return sol;
}

void save_solution(const Solution& sol, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_solution(sol, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

Solution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_solution(in);
}

}  // namespace mwsrpdt
