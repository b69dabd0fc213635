#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mwsrpdt/aco.hpp"
#include "mwsrpdt/types.hpp"

namespace mwsrpdt {

// One benchmark result; the CSV column order is fixed by kBenchCsvHeader and
// never reorders. ants/iters are 0 for the constructive heuristic.
struct BenchRow {
  std::string type;
  int n = 0;
  int id = 0;
  int tasks = 0;
  std::string algo;
  int ants = 0;
  int iters = 0;
  std::uint64_t seed = 0;
  int ub = 0;         // makespan in days
  double fprime = 0.0;
  double seconds = 0.0;
};

inline constexpr const char* kBenchCsvHeader = "type,n,id,tasks,algo,ants,iters,seed,ub,fprime,seconds";

// Row serialization: fprime as shortest round-trip decimal, seconds with one
// decimal (the only column exempt from byte-identity across runs).
std::string to_csv(const BenchRow& row);

// Parses a CSV produced by the harness; requires the exact header.
// Throws ParseError on malformed content.
std::vector<BenchRow> read_bench_csv(std::istream& in);

struct HistogramBin {
  int difference_days = 0;
  long long count = 0;
};

// Per instance (type, n, id): best constructive ub minus best `aco_algo` ub
// over the rows present, binned and sorted ascending by difference.
// Instances lacking either column are ignored.
std::vector<HistogramBin> improvement_histogram(const std::vector<BenchRow>& rows,
                                                const std::string& aco_algo);

// Applies one `key=value` override onto params (alpha, beta, rho, phi, q0, Q,
// tau0, tau_min, tau_max, encoding, ants, iters, global_best).
// Throws InvalidConfigError for unknown keys or unparsable values.
void apply_param(AcoParams& params, const std::string& key, const std::string& value);

// Reads `key = value` lines ('#' comments, blank lines ignored) in order.
// Throws IoError / ParseError.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// Extracts the trailing id from a `<type>_<n>_<id>` file stem; 0 when the
// stem does not match.
int instance_id_from_path(const std::string& path);

// Runs one algorithm ("constructive", "as", "mmas", "acs") on one instance,
// timing it with a monotonic clock.
struct BenchOutcome {
  BenchRow row;
  Solution solution;
};
BenchOutcome bench_run(const Instance& inst, int id, const std::string& algo,
                       const AcoParams& params);

}  // namespace mwsrpdt
