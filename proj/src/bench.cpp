#include "mwsrpdt/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "mwsrpdt/constructive.hpp"
#include "mwsrpdt/errors.hpp"
#include "text_io.hpp"

namespace mwsrpdt {

std::string to_csv(const BenchRow& row) {
  char seconds[32];
  std::snprintf(seconds, sizeof seconds, "%.1f", row.seconds);
  std::ostringstream out;
  out << row.type << ',' << row.n << ',' << row.id << ',' << row.tasks << ',' << row.algo
      << ',' << row.ants << ',' << row.iters << ',' << row.seed << ',' << row.ub << ','
      << detail::format_double(row.fprime) << ',' << seconds;
  return out.str();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

template <typename T>
T parse_field(const std::string& tok, int line, const std::string& what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "invalid " + what + ": '" + tok + "'");
  return value;
}

}  // namespace

std::vector<BenchRow> read_bench_csv(std::istream& in) {
  std::string line;
  int number = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty CSV; expected header");
  ++number;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kBenchCsvHeader)
    throw ParseError(number, "unexpected CSV header (expected '" +
                                 std::string(kBenchCsvHeader) + "')");
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 11) throw ParseError(number, "expected 11 CSV fields");
    BenchRow row;
    row.type = f[0];
    row.n = parse_field<int>(f[1], number, "n");
    row.id = parse_field<int>(f[2], number, "id");
    row.tasks = parse_field<int>(f[3], number, "tasks");
    row.algo = f[4];
    row.ants = parse_field<int>(f[5], number, "ants");
    row.iters = parse_field<int>(f[6], number, "iters");
    row.seed = parse_field<std::uint64_t>(f[7], number, "seed");
    row.ub = parse_field<int>(f[8], number, "ub");
    row.fprime = parse_field<double>(f[9], number, "fprime");
    row.seconds = parse_field<double>(f[10], number, "seconds");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<HistogramBin> improvement_histogram(const std::vector<BenchRow>& rows,
                                                const std::string& aco_algo) {
  struct Pair {
    int constructive = 0;
    int aco = 0;
    bool has_constructive = false;
    bool has_aco = false;
  };
  std::map<std::tuple<std::string, int, int>, Pair> per_instance;
  for (const BenchRow& row : rows) {
    Pair& p = per_instance[{row.type, row.n, row.id}];
    if (row.algo == "constructive") {
      p.constructive = p.has_constructive ? std::min(p.constructive, row.ub) : row.ub;
      p.has_constructive = true;
    } else if (row.algo == aco_algo) {
      p.aco = p.has_aco ? std::min(p.aco, row.ub) : row.ub;
      p.has_aco = true;
    }
  }
  std::map<int, long long> bins;
  for (const auto& [key, p] : per_instance)
    if (p.has_constructive && p.has_aco) ++bins[p.constructive - p.aco];
  std::vector<HistogramBin> result;
  result.reserve(bins.size());
  for (const auto& [difference, count] : bins) result.push_back({difference, count});
  return result;
}

void apply_param(AcoParams& params, const std::string& key, const std::string& value) {
  auto as_double = [&](const std::string& what) {
    double v;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
      throw InvalidConfigError("invalid value for " + what + ": '" + value + "'");
    return v;
  };
  auto as_int = [&](const std::string& what) {
    int v;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
      throw InvalidConfigError("invalid value for " + what + ": '" + value + "'");
    return v;
  };
  if (key == "alpha") params.alpha = as_double(key);
  else if (key == "beta") params.beta = as_double(key);
  else if (key == "rho") params.rho = as_double(key);
  else if (key == "phi") params.phi = as_double(key);
  else if (key == "q0") params.q0 = as_double(key);
  else if (key == "Q") params.Q = as_double(key);
  else if (key == "tau0") params.tau0 = as_double(key);
  else if (key == "tau_min") params.tau_min = as_double(key);
  else if (key == "tau_max") params.tau_max = as_double(key);
  else if (key == "encoding") params.encoding = component_encoding_from_string(value);
  else if (key == "ants") params.num_ants = as_int(key);
  else if (key == "iters") params.max_iterations = as_int(key);
  else if (key == "global_best") {
    if (value == "true" || value == "1") params.deposit_global_best = true;
    else if (value == "false" || value == "0") params.deposit_global_best = false;
    else throw InvalidConfigError("invalid value for global_best: '" + value + "'");
  } else {
    throw InvalidConfigError("unknown parameter: '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    const auto eq = raw.find('=');
    std::string key = raw.substr(0, eq == std::string::npos ? raw.size() : eq);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    key = trim(key);
    if (key.empty()) {
      if (trim(raw).empty()) continue;  // blank/comment line
      throw ParseError(number, "expected 'key = value'");
    }
    if (eq == std::string::npos) throw ParseError(number, "expected 'key = value'");
    const std::string value = trim(raw.substr(eq + 1));
    if (value.empty()) throw ParseError(number, "missing value for '" + key + "'");
    pairs.emplace_back(key, value);
  }
  return pairs;
}

int instance_id_from_path(const std::string& path) {
  // Strip directories and the extension, then expect `<type>_<n>_<id>`.
  const auto slash = path.find_last_of("/\\");
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  if (const auto dot = stem.find_last_of('.'); dot != std::string::npos)
    stem = stem.substr(0, dot);
  const auto second = stem.find_last_of('_');
  if (second == std::string::npos) return 0;
  const std::string tail = stem.substr(second + 1);
  int id = 0;
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), id);
  if (ec != std::errc() || ptr != tail.data() + tail.size()) return 0;
  return id;
}

BenchOutcome bench_run(const Instance& inst, int id, const std::string& algo,
                       const AcoParams& params) {
  BenchOutcome outcome;
  outcome.row.type = to_string(inst.type);
  outcome.row.n = inst.n;
  outcome.row.id = id;
  outcome.row.tasks = inst.task_count();
  outcome.row.algo = algo;
  outcome.row.seed = params.seed;
  const auto begun = std::chrono::steady_clock::now();
  if (algo == "constructive") {
    outcome.solution = construct_greedy(inst);
  } else {
    AcoParams effective = params;
    effective.variant = aco_variant_from_string(algo);
    outcome.solution = run(inst, effective).best;
    outcome.row.ants = params.num_ants;
    outcome.row.iters = params.max_iterations;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - begun;
  const ObjectiveValue objective = evaluate(inst, outcome.solution);
  outcome.row.ub = objective.days;
  outcome.row.fprime = objective.fractional;
  outcome.row.seconds = elapsed.count();
  return outcome;
}

}  // namespace mwsrpdt
