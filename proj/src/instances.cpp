#include "mwsrpdt/instances.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <vector>

#include "mwsrpdt/errors.hpp"
#include "mwsrpdt/rng.hpp"
#include "text_io.hpp"

namespace mwsrpdt {

namespace {

constexpr double kSkillLevels[] = {0.5, 1.0, 2.0};       // finite skills
constexpr double kReferenceTimes[] = {0.5, 1.0, 1.5, 2.0};

}  // namespace

Instance generate(const GeneratorConfig& cfg) {
  if (cfg.n < 2)
    throw InvalidConfigError("generator needs n >= 2 (depot plus at least one customer)");

  Instance inst;
  inst.n = cfg.n;
  inst.num_teams = 3;
  inst.day_length = 8.0;
  inst.type = cfg.type;
  inst.seed = cfg.seed;

  // One substream per stage so a change in one stage cannot shift the draws
  // of another.
  Rng coord_rng(derive_seed(cfg.seed, {1}));
  inst.coords.resize(static_cast<std::size_t>(cfg.n));
  for (GridPoint& g : inst.coords) {
    g.x = coord_rng.uniform_int(0, 100);
    g.y = coord_rng.uniform_int(0, 100);
  }

  const bool single_service = cfg.type == InstanceType::C;
  const std::vector<int> service_sizes = single_service ? std::vector<int>{3}
                                                        : std::vector<int>{1, 3, 5};
  Rng service_rng(derive_seed(cfg.seed, {2}));
  std::vector<std::vector<double>> reference;    // per service, per task
  std::vector<std::vector<int>> responsible;     // per service, per task; 0 = none
  for (std::size_t si = 0; si < service_sizes.size(); ++si) {
    Service svc;
    svc.id = static_cast<int>(si);
    svc.num_tasks = service_sizes[si];
    std::vector<double> ref(static_cast<std::size_t>(svc.num_tasks));
    std::vector<int> resp(static_cast<std::size_t>(svc.num_tasks), 0);
    for (int a = 0; a < svc.num_tasks; ++a) {
      ref[static_cast<std::size_t>(a)] = kReferenceTimes[service_rng.uniform_int(0, 3)];
      if (cfg.type != InstanceType::A)
        resp[static_cast<std::size_t>(a)] = service_rng.uniform_int(1, inst.num_teams);
    }
    // Uniform 3-way layer partition; arcs go from each layer-l task to every
    // layer-(l-1) task. Empty layers simply contribute no arcs.
    std::vector<int> layer(static_cast<std::size_t>(svc.num_tasks));
    for (int a = 0; a < svc.num_tasks; ++a)
      layer[static_cast<std::size_t>(a)] = service_rng.uniform_int(1, 3);
    for (int l = 2; l <= 3; ++l)
      for (int a = 0; a < svc.num_tasks; ++a)
        if (layer[static_cast<std::size_t>(a)] == l)
          for (int b = 0; b < svc.num_tasks; ++b)
            if (layer[static_cast<std::size_t>(b)] == l - 1) svc.deps.push_back({a, b});
    inst.services.push_back(std::move(svc));
    reference.push_back(std::move(ref));
    responsible.push_back(std::move(resp));
  }

  Rng request_rng(derive_seed(cfg.seed, {3}));
  inst.requested.resize(static_cast<std::size_t>(cfg.n - 1));
  for (int& sid : inst.requested)
    sid = request_rng.uniform_int(0, static_cast<int>(inst.services.size()) - 1);

  // Skills (and thus durations) are drawn once per (team, service, task) and
  // shared by every customer requesting the service.
  Rng skill_rng(derive_seed(cfg.seed, {4}));
  inst.times.assign(static_cast<std::size_t>(inst.num_teams), {});
  for (int k = 1; k <= inst.num_teams; ++k) {
    auto& per_team = inst.times[static_cast<std::size_t>(k - 1)];
    per_team.resize(inst.services.size());
    for (std::size_t s = 0; s < inst.services.size(); ++s) {
      const Service& svc = inst.services[s];
      per_team[s].resize(static_cast<std::size_t>(svc.num_tasks));
      for (int a = 0; a < svc.num_tasks; ++a) {
        double skill = 0.0;
        const bool guaranteed = responsible[s][static_cast<std::size_t>(a)] == k;
        switch (cfg.type) {
          case InstanceType::A:
            skill = kSkillLevels[skill_rng.uniform_int(0, 2)];
            break;
          case InstanceType::B:
            if (guaranteed) {
              skill = kSkillLevels[skill_rng.uniform_int(0, 2)];
            } else {
              const int pick = skill_rng.uniform_int(0, 3);  // {0, 0.5, 1, 2}
              skill = pick == 0 ? 0.0 : kSkillLevels[pick - 1];
            }
            break;
          case InstanceType::C:
            if (guaranteed) skill = kSkillLevels[skill_rng.uniform_int(0, 2)];
            break;
        }
        auto& cell = per_team[s][static_cast<std::size_t>(a)];
        if (skill > 0.0)
          cell = reference[s][static_cast<std::size_t>(a)] / skill;
        else
          cell = std::nullopt;
      }
    }
  }

  inst.finalize();
  return inst;
}

std::string format_hours(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  double back = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
  if (ec != std::errc() || ptr != s.data() + s.size() || back != value)
    throw InvalidInstanceError("duration " + s +
                               " is not representable with 6 decimal places");
  return s;
}

void write_instance(const Instance& inst, std::ostream& out) {
  out << "MWSRPDT 1\n";
  out << inst.n << ' ' << inst.num_teams << ' ' << format_hours(inst.day_length) << ' '
      << to_string(inst.type) << ' ' << inst.seed << '\n';
  out << "COORDS\n";
  for (int v = 1; v <= inst.n; ++v) {
    const GridPoint& g = inst.coords[static_cast<std::size_t>(v - 1)];
    out << v << ' ' << g.x << ' ' << g.y << '\n';
  }
  out << "SERVICES\n";
  for (const Service& svc : inst.services) {
    out << "SERVICE " << svc.id << ' ' << svc.num_tasks << '\n';
    out << "DEPS " << svc.deps.size() << '\n';
    for (const Dependency& d : svc.deps) out << d.after << ' ' << d.before << '\n';
  }
  out << "REQUESTS\n";
  for (int i = 2; i <= inst.n; ++i)
    out << i << ' ' << inst.requested[static_cast<std::size_t>(i - 2)] << '\n';
  out << "TIMES\n";
  for (int k = 1; k <= inst.num_teams; ++k)
    for (std::size_t s = 0; s < inst.services.size(); ++s)
      for (int a = 0; a < inst.services[s].num_tasks; ++a) {
        const auto& cell =
            inst.times[static_cast<std::size_t>(k - 1)][s][static_cast<std::size_t>(a)];
        out << k << ' ' << s << ' ' << a << ' '
            << (cell ? format_hours(*cell) : std::string("INF")) << '\n';
      }
  out << "END\n";
}

Instance read_instance(std::istream& in) {
  using namespace detail;
  LineReader r(in);

  const auto& magic = r.next("header 'MWSRPDT 1'");
  if (magic.size() != 2 || magic[0] != "MWSRPDT" || magic[1] != "1")
    throw ParseError(r.line(), "expected header 'MWSRPDT 1'");

  Instance inst;
  const auto& meta = r.next("'n K D type seed' line");
  expect_fields(r, meta, 5, "'n K D type seed' line");
  inst.n = static_cast<int>(parse_int(r, meta[0], "vertex count"));
  inst.num_teams = static_cast<int>(parse_int(r, meta[1], "team count"));
  inst.day_length = parse_hours(r, meta[2], "day length");
  if (meta[3] != "A" && meta[3] != "B" && meta[3] != "C")
    throw ParseError(r.line(), "invalid instance type: '" + meta[3] + "'");
  inst.type = instance_type_from_string(meta[3]);
  inst.seed = parse_u64(r, meta[4], "seed");
  if (inst.n < 2) throw ParseError(r.line(), "vertex count must be at least 2");
  if (inst.num_teams < 1) throw ParseError(r.line(), "team count must be at least 1");

  const auto& coords_kw = r.next("section COORDS");
  if (coords_kw.size() != 1 || coords_kw[0] != "COORDS")
    throw ParseError(r.line(), "expected section COORDS");
  inst.coords.resize(static_cast<std::size_t>(inst.n));
  for (int v = 1; v <= inst.n; ++v) {
    const auto& f = r.next("coordinate line 'i x y'");
    expect_fields(r, f, 3, "coordinate line 'i x y'");
    if (parse_int(r, f[0], "vertex index") != v)
      throw ParseError(r.line(), "coordinates must be listed in order 1..n");
    auto& g = inst.coords[static_cast<std::size_t>(v - 1)];
    g.x = static_cast<int>(parse_int(r, f[1], "x coordinate"));
    g.y = static_cast<int>(parse_int(r, f[2], "y coordinate"));
  }

  const auto& services_kw = r.next("section SERVICES");
  if (services_kw.size() != 1 || services_kw[0] != "SERVICES")
    throw ParseError(r.line(), "expected section SERVICES");
  while (!r.peek_keyword("REQUESTS")) {
    const auto& header = r.next("'SERVICE id ntasks' or section REQUESTS");
    if (header[0] != "SERVICE" || header.size() != 3)
      throw ParseError(r.line(), "expected 'SERVICE id ntasks' or section REQUESTS");
    Service svc;
    svc.id = static_cast<int>(parse_int(r, header[1], "service id"));
    if (svc.id != static_cast<int>(inst.services.size()))
      throw ParseError(r.line(), "service ids must appear in order 0,1,2,...");
    svc.num_tasks = static_cast<int>(parse_int(r, header[2], "task count"));
    if (svc.num_tasks < 1) throw ParseError(r.line(), "service needs at least one task");
    const auto& deps_kw = r.next("'DEPS m' line");
    if (deps_kw.size() != 2 || deps_kw[0] != "DEPS")
      throw ParseError(r.line(), "expected 'DEPS m' line");
    const long long m = parse_int(r, deps_kw[1], "dependency count");
    if (m < 0) throw ParseError(r.line(), "dependency count must be nonnegative");
    for (long long d = 0; d < m; ++d) {
      const auto& f = r.next("dependency line 'a b'");
      expect_fields(r, f, 2, "dependency line 'a b'");
      Dependency dep;
      dep.after = static_cast<int>(parse_int(r, f[0], "task id"));
      dep.before = static_cast<int>(parse_int(r, f[1], "task id"));
      svc.deps.push_back(dep);
    }
    inst.services.push_back(std::move(svc));
  }
  if (inst.services.empty())
    throw ParseError(r.line(), "expected at least one SERVICE before REQUESTS");

  const auto& requests_kw = r.next("section REQUESTS");
  if (requests_kw.size() != 1 || requests_kw[0] != "REQUESTS")
    throw ParseError(r.line(), "expected section REQUESTS");
  inst.requested.resize(static_cast<std::size_t>(inst.n - 1));
  for (int i = 2; i <= inst.n; ++i) {
    const auto& f = r.next("request line 'i serviceId'");
    expect_fields(r, f, 2, "request line 'i serviceId'");
    if (parse_int(r, f[0], "customer index") != i)
      throw ParseError(r.line(), "requests must be listed in order 2..n");
    const long long sid = parse_int(r, f[1], "service id");
    if (sid < 0 || sid >= static_cast<long long>(inst.services.size()))
      throw ParseError(r.line(), "request names unknown service " + std::to_string(sid));
    inst.requested[static_cast<std::size_t>(i - 2)] = static_cast<int>(sid);
  }

  const auto& times_kw = r.next("section TIMES");
  if (times_kw.size() != 1 || times_kw[0] != "TIMES")
    throw ParseError(r.line(), "expected section TIMES");
  inst.times.assign(static_cast<std::size_t>(inst.num_teams), {});
  std::vector<std::vector<std::vector<char>>> seen(static_cast<std::size_t>(inst.num_teams));
  for (int k = 0; k < inst.num_teams; ++k) {
    inst.times[static_cast<std::size_t>(k)].resize(inst.services.size());
    seen[static_cast<std::size_t>(k)].resize(inst.services.size());
    for (std::size_t s = 0; s < inst.services.size(); ++s) {
      inst.times[static_cast<std::size_t>(k)][s].resize(
          static_cast<std::size_t>(inst.services[s].num_tasks));
      seen[static_cast<std::size_t>(k)][s].assign(
          static_cast<std::size_t>(inst.services[s].num_tasks), 0);
    }
  }
  while (!r.peek_keyword("END")) {
    const auto& f = r.next("time line 'k s a value' or END");
    expect_fields(r, f, 4, "time line 'k s a value'");
    const long long k = parse_int(r, f[0], "team index");
    const long long s = parse_int(r, f[1], "service id");
    const long long a = parse_int(r, f[2], "task id");
    if (k < 1 || k > inst.num_teams)
      throw ParseError(r.line(), "team index out of range: " + std::to_string(k));
    if (s < 0 || s >= static_cast<long long>(inst.services.size()))
      throw ParseError(r.line(), "service id out of range: " + std::to_string(s));
    if (a < 0 || a >= inst.services[static_cast<std::size_t>(s)].num_tasks)
      throw ParseError(r.line(), "task id out of range: " + std::to_string(a));
    auto& seen_flag = seen[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(s)]
                          [static_cast<std::size_t>(a)];
    if (seen_flag)
      throw ParseError(r.line(), "duplicate time entry for team " + std::to_string(k) +
                                     ", service " + std::to_string(s) + ", task " +
                                     std::to_string(a));
    seen_flag = 1;
    auto& cell = inst.times[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(s)]
                           [static_cast<std::size_t>(a)];
    if (f[3] == "INF") {
      cell = std::nullopt;
    } else {
      const double value = parse_hours(r, f[3], "task time");
      if (!(value > 0.0)) throw ParseError(r.line(), "task times must be positive");
      cell = value;
    }
  }
  const auto& end_kw = r.next("terminator END");
  if (end_kw.size() != 1 || end_kw[0] != "END")
    throw ParseError(r.line(), "expected terminator END");
  if (!r.exhausted()) {
    r.next("");
    throw ParseError(r.line(), "unexpected content after END");
  }
  for (int k = 1; k <= inst.num_teams; ++k)
    for (std::size_t s = 0; s < inst.services.size(); ++s)
      for (int a = 0; a < inst.services[s].num_tasks; ++a)
        if (!seen[static_cast<std::size_t>(k - 1)][s][static_cast<std::size_t>(a)])
          throw ParseError(r.line(), "missing time entry for team " + std::to_string(k) +
                                         ", service " + std::to_string(s) + ", task " +
                                         std::to_string(a));

  inst.finalize();
  return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_instance(inst, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_instance(in);
}

}  // namespace mwsrpdt
