#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mwsrpdt/bench.hpp"
#include "mwsrpdt/errors.hpp"
#include "mwsrpdt/instances.hpp"
#include "mwsrpdt/validate.hpp"
#include "support.hpp"

using namespace mwsrpdt;

namespace {

BenchRow make_row(const std::string& type, int n, int id, const std::string& algo, int ub) {
  BenchRow row;
  row.type = type;
  row.n = n;
  row.id = id;
  row.tasks = 3 * (n - 1);
  row.algo = algo;
  if (algo != "constructive") {
    row.ants = 10;
    row.iters = 20;
  }
  row.seed = 42;
  row.ub = ub;
  row.fprime = ub - 0.5;
  row.seconds = 0.125;
  return row;
}

}  // namespace

TEST_CASE("csv rows serialize with the fixed column order") {
  const BenchRow row = make_row("A", 10, 3, "mmas", 4);
  CHECK(to_csv(row) == "A,10,3,27,mmas,10,20,42,4,3.5,0.1");

  BenchRow greedy = make_row("B", 5, 1, "constructive", 2);
  greedy.seconds = 0.06;
  CHECK(to_csv(greedy) == "B,5,1,12,constructive,0,0,42,2,1.5,0.1");

  BenchRow slow = make_row("C", 5, 2, "acs", 3);
  slow.seconds = 12.34;
  CHECK(to_csv(slow) == "C,5,2,12,acs,10,20,42,3,2.5,12.3");
}

TEST_CASE("csv files round-trip through the parser") {
  std::ostringstream out;
  out << kBenchCsvHeader << '\n';
  const std::vector<BenchRow> rows = {make_row("A", 10, 1, "constructive", 5),
                                      make_row("A", 10, 1, "mmas", 4),
                                      make_row("C", 7, 2, "acs", 6)};
  for (const BenchRow& row : rows) out << to_csv(row) << '\n';

  std::istringstream in(out.str());
  const std::vector<BenchRow> parsed = read_bench_csv(in);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].type == rows[i].type);
    CHECK(parsed[i].n == rows[i].n);
    CHECK(parsed[i].id == rows[i].id);
    CHECK(parsed[i].tasks == rows[i].tasks);
    CHECK(parsed[i].algo == rows[i].algo);
    CHECK(parsed[i].ants == rows[i].ants);
    CHECK(parsed[i].iters == rows[i].iters);
    CHECK(parsed[i].seed == rows[i].seed);
    CHECK(parsed[i].ub == rows[i].ub);
    CHECK(parsed[i].fprime == rows[i].fprime);
    CHECK(parsed[i].seconds == 0.1);  // rounded to one decimal on write
  }
}

TEST_CASE("the csv parser rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_bench_csv(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("wrong,header\n"), ParseError);
  CHECK_THROWS_AS(parse(std::string(kBenchCsvHeader) + "\nA,10,1,27,mmas,10,20\n"),
                  ParseError);
  CHECK_THROWS_AS(parse(std::string(kBenchCsvHeader) + "\nA,ten,1,27,mmas,10,20,42,4,3.5,0.1\n"),
                  ParseError);
  CHECK(parse(std::string(kBenchCsvHeader) + "\n").empty());
}

TEST_CASE("the improvement histogram compares the best run per instance") {
  std::vector<BenchRow> rows;
  // Instance (A, 10, 1): constructive best 6, mmas best 4 -> difference 2.
  rows.push_back(make_row("A", 10, 1, "constructive", 7));
  rows.push_back(make_row("A", 10, 1, "constructive", 6));
  rows.push_back(make_row("A", 10, 1, "mmas", 5));
  rows.push_back(make_row("A", 10, 1, "mmas", 4));
  // Instance (A, 10, 2): difference 0.
  rows.push_back(make_row("A", 10, 2, "constructive", 3));
  rows.push_back(make_row("A", 10, 2, "mmas", 3));
  // Instance (B, 12, 1): difference 2 as well.
  rows.push_back(make_row("B", 12, 1, "constructive", 9));
  rows.push_back(make_row("B", 12, 1, "mmas", 7));
  // Rows of other algorithms and incomplete instances are ignored.
  rows.push_back(make_row("A", 10, 1, "acs", 1));
  rows.push_back(make_row("C", 5, 9, "constructive", 4));
  rows.push_back(make_row("C", 5, 8, "acs", 2));

  const std::vector<HistogramBin> bins = improvement_histogram(rows, "mmas");
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].difference_days == 0);
  CHECK(bins[0].count == 1);
  CHECK(bins[1].difference_days == 2);
  CHECK(bins[1].count == 2);

  long long total = 0;
  for (const HistogramBin& bin : bins) total += bin.count;
  CHECK(total == 3);  // one entry per instance with both columns

  SUBCASE("a slower metaheuristic yields a negative difference bin") {
    rows.push_back(make_row("C", 5, 8, "constructive", 2));
    rows.push_back(make_row("C", 5, 8, "mmas", 3));
    const std::vector<HistogramBin> with_negative = improvement_histogram(rows, "mmas");
    REQUIRE(with_negative.size() == 3);
    CHECK(with_negative.front().difference_days == -1);
    CHECK(with_negative.front().count == 1);
  }
}

TEST_CASE("parameter overrides apply onto the tuned defaults") {
  AcoParams params = AcoParams::defaults(AcoVariant::MaxMinAntSystem);
  apply_param(params, "alpha", "2.5");
  CHECK(params.alpha == 2.5);
  apply_param(params, "beta", "0.5");
  CHECK(params.beta == 0.5);
  apply_param(params, "rho", "0.3");
  CHECK(params.rho == 0.3);
  apply_param(params, "phi", "0.2");
  CHECK(params.phi == 0.2);
  apply_param(params, "q0", "0.7");
  CHECK(params.q0 == 0.7);
  apply_param(params, "Q", "6.5");
  CHECK(params.Q == 6.5);
  apply_param(params, "tau0", "3.25");
  CHECK(params.tau0 == 3.25);
  apply_param(params, "tau_min", "0.05");
  CHECK(params.tau_min == 0.05);
  apply_param(params, "tau_max", "4.5");
  CHECK(params.tau_max == 4.5);
  apply_param(params, "encoding", "ct4");
  CHECK(params.encoding == ComponentEncoding::TeamTask);
  apply_param(params, "ants", "25");
  CHECK(params.num_ants == 25);
  apply_param(params, "iters", "50");
  CHECK(params.max_iterations == 50);
  apply_param(params, "global_best", "1");
  CHECK(params.deposit_global_best);
  apply_param(params, "global_best", "0");
  CHECK_FALSE(params.deposit_global_best);

  CHECK_THROWS_AS(apply_param(params, "gamma", "1.0"), InvalidConfigError);
  CHECK_THROWS_AS(apply_param(params, "alpha", "abc"), InvalidConfigError);
  CHECK_THROWS_AS(apply_param(params, "ants", "2.5"), InvalidConfigError);
  CHECK_THROWS_AS(apply_param(params, "encoding", "ct9"), InvalidConfigError);
}

TEST_CASE("config files hold ordered key value pairs") {
  const std::string path = "test_bench_config.tmp";
  {
    std::ofstream out(path);
    out << "# tuned overrides\n"
        << "alpha = 2.5\n"
        << "\n"
        << "encoding = ct1\n"
        << "iters=30\n";
  }
  const auto pairs = read_config_file(path);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == std::pair<std::string, std::string>{"alpha", "2.5"});
  CHECK(pairs[1] == std::pair<std::string, std::string>{"encoding", "ct1"});
  CHECK(pairs[2] == std::pair<std::string, std::string>{"iters", "30"});

  {
    std::ofstream out(path);
    out << "alpha\n";
  }
  CHECK_THROWS_AS(read_config_file(path), ParseError);
  CHECK_THROWS_AS(read_config_file("no_such_config.tmp"), IoError);
  std::remove(path.c_str());
}

TEST_CASE("instance ids come from the trailing file-stem field") {
  CHECK(instance_id_from_path("A_20_3.mwsrpdt") == 3);
  CHECK(instance_id_from_path("bench/dir/B_100_17.mwsrpdt") == 17);
  CHECK(instance_id_from_path("C_5_0.mwsrpdt") == 0);
  CHECK(instance_id_from_path("plain.mwsrpdt") == 0);
  CHECK(instance_id_from_path("nodot_7") == 7);
}

TEST_CASE("bench runs fill rows consistently with their solutions") {
  const Instance inst = generate(GeneratorConfig{6, InstanceType::B, 3});

  AcoParams params = AcoParams::defaults(AcoVariant::MaxMinAntSystem);
  params.num_ants = 5;
  params.max_iterations = 6;
  params.seed = 9;

  SUBCASE("constructive rows carry zero ants and iterations") {
    const BenchOutcome outcome = bench_run(inst, 4, "constructive", params);
    CHECK(outcome.row.type == "B");
    CHECK(outcome.row.n == 6);
    CHECK(outcome.row.id == 4);
    CHECK(outcome.row.tasks == inst.task_count());
    CHECK(outcome.row.algo == "constructive");
    CHECK(outcome.row.ants == 0);
    CHECK(outcome.row.iters == 0);
    CHECK(outcome.row.seed == 9);
    CHECK(outcome.row.seconds >= 0.0);
    const ObjectiveValue objective = recompute_objective(inst, outcome.solution);
    CHECK(outcome.row.ub == objective.days);
    CHECK(outcome.row.fprime == objective.fractional);
  }
  SUBCASE("metaheuristic rows record the colony size") {
    const BenchOutcome outcome = bench_run(inst, 1, "mmas", params);
    CHECK(outcome.row.algo == "mmas");
    CHECK(outcome.row.ants == 5);
    CHECK(outcome.row.iters == 6);
    const ObjectiveValue objective = recompute_objective(inst, outcome.solution);
    CHECK(outcome.row.ub == objective.days);
    CHECK(outcome.row.fprime == objective.fractional);
  }
  SUBCASE("unknown algorithms are rejected") {
    CHECK_THROWS_AS(bench_run(inst, 1, "tabu", params), InvalidConfigError);
  }
}
