// Command-line front end: instance generation, solving, validation, the
// exact reference search, LP export, and the benchmark harness.
#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mwsrpdt/aco.hpp"
#include "mwsrpdt/bench.hpp"
#include "mwsrpdt/constructive.hpp"
#include "mwsrpdt/errors.hpp"
#include "mwsrpdt/instances.hpp"
#include "mwsrpdt/mip_export.hpp"
#include "mwsrpdt/oracle.hpp"
#include "mwsrpdt/types.hpp"
#include "mwsrpdt/validate.hpp"
#include "text_io.hpp"

namespace fs = std::filesystem;
using namespace mwsrpdt;

namespace {

// Builds the parameter set for one algorithm with the documented precedence:
// built-in defaults, then config-file pairs, then --param flags, then the
// dedicated --ants/--iters flags (sentinel -1 = not passed).
AcoParams make_params(const std::string& algo, const std::string& config_path,
                      const std::vector<std::string>& param_flags, int ants, int iters,
                      std::uint64_t seed) {
  AcoParams params = algo == "constructive" ? AcoParams{} : AcoParams::defaults(aco_variant_from_string(algo));
  if (!config_path.empty())
    for (const auto& [key, value] : read_config_file(config_path)) apply_param(params, key, value);
  for (const std::string& flag : param_flags) {
    const auto eq = flag.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InvalidConfigError("--param expects key=value, got '" + flag + "'");
    apply_param(params, flag.substr(0, eq), flag.substr(eq + 1));
  }
  if (ants > 0) params.num_ants = ants;
  if (iters > 0) params.max_iterations = iters;
  params.seed = seed;
  return params;
}

unsigned harness_threads(std::size_t jobs) {
  unsigned threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (const char* env = std::getenv("MWSRPDT_THREADS")) {
    unsigned cap = 0;
    const std::string text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec == std::errc() && ptr == text.data() + text.size() && cap > 0) threads = cap;
  }
  if (threads > jobs) threads = static_cast<unsigned>(jobs);
  return threads == 0 ? 1 : threads;
}

struct BenchJob {
  const Instance* inst;
  int id;
  std::string algo;
  AcoParams params;
};

// Runs the jobs on a worker pool, flushing finished rows to `out` strictly in
// job order (row-by-row, so an interrupted run leaves a usable prefix).
void run_bench_jobs(const std::vector<BenchJob>& jobs, std::ostream& out) {
  out << kBenchCsvHeader << '\n' << std::flush;
  const unsigned threads = harness_threads(jobs.size());
  std::vector<std::optional<std::string>> rows(jobs.size());
  std::mutex mu;
  std::size_t flushed = 0;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) return;
      std::string row;
      try {
        const BenchJob& job = jobs[i];
        row = to_csv(bench_run(*job.inst, job.id, job.algo, job.params).row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
      std::lock_guard<std::mutex> lock(mu);
      rows[i] = std::move(row);
      while (flushed < rows.size() && rows[flushed]) {
        out << *rows[flushed] << '\n' << std::flush;
        ++flushed;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  if (!out) throw IoError("failed while writing benchmark rows");
}

// Opens `path` for writing, or returns the fallback stream when empty.
std::ofstream open_out(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

int run_app(int argc, char** argv) {
  CLI::App app{"Workforce scheduling and routing toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  // --- generate ------------------------------------------------------------
  auto* generate_cmd = app.add_subcommand("generate", "Generate random instance files");
  int gen_n = 0;
  std::string gen_type;
  std::uint64_t gen_seed = 0;
  int gen_count = 1;
  std::string gen_out_dir = ".";
  generate_cmd->add_option("--n", gen_n, "Vertex count including the depot")
      ->required()
      ->check(CLI::Range(2, 1000000));
  generate_cmd->add_option("--type", gen_type, "Instance type (A, B, or C)")
      ->required()
      ->check(CLI::IsMember({"A", "B", "C"}));
  generate_cmd->add_option("--seed", gen_seed, "Base seed; file i uses seed+i");
  generate_cmd->add_option("--count", gen_count, "Number of instances")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--out-dir", gen_out_dir, "Output directory");
  generate_cmd->callback([&] {
    std::error_code ec;
    fs::create_directories(gen_out_dir, ec);
    if (ec) throw IoError("cannot create directory '" + gen_out_dir + "': " + ec.message());
    for (int id = 0; id < gen_count; ++id) {
      GeneratorConfig cfg{gen_n, instance_type_from_string(gen_type), gen_seed + static_cast<std::uint64_t>(id)};
      const Instance inst = generate(cfg);
      std::ostringstream name;
      name << gen_type << '_' << gen_n << '_' << id << ".mwsrpdt";
      save_instance(inst, (fs::path(gen_out_dir) / name.str()).string());
    }
  });

  // --- solve ---------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance and print a CSV row");
  std::string solve_instance, solve_algo, solve_out, solve_config;
  std::vector<std::string> solve_params;
  int solve_ants = -1, solve_iters = -1;
  std::uint64_t solve_seed = 0;
  solve_cmd->add_option("--instance", solve_instance, "Instance file")->required();
  solve_cmd->add_option("--algo", solve_algo, "constructive, as, mmas, or acs")
      ->required()
      ->check(CLI::IsMember({"constructive", "as", "mmas", "acs"}));
  solve_cmd->add_option("--ants", solve_ants, "Ants per iteration")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--iters", solve_iters, "Iterations")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve_seed, "Random seed");
  solve_cmd->add_option("--config", solve_config, "Parameter file with key = value lines");
  solve_cmd->add_option("--param", solve_params, "Override, e.g. --param alpha=2.5");
  solve_cmd->add_option("--out", solve_out, "Write the solution file here");
  solve_cmd->callback([&] {
    const Instance inst = load_instance(solve_instance);
    const AcoParams params =
        make_params(solve_algo, solve_config, solve_params, solve_ants, solve_iters, solve_seed);
    const BenchOutcome outcome =
        bench_run(inst, instance_id_from_path(solve_instance), solve_algo, params);
    if (!solve_out.empty()) save_solution(outcome.solution, solve_out);
    std::cout << to_csv(outcome.row) << '\n';
  });

  // --- validate ------------------------------------------------------------
  auto* validate_cmd = app.add_subcommand("validate", "Check a solution against an instance");
  std::string val_instance, val_solution;
  validate_cmd->add_option("--instance", val_instance, "Instance file")->required();
  validate_cmd->add_option("--solution", val_solution, "Solution file")->required();
  validate_cmd->callback([&] {
    const Instance inst = load_instance(val_instance);
    const Solution sol = load_solution(val_solution);
    const FeasibilityReport report = check_feasible(inst, sol);
    if (report.ok) {
      const ObjectiveValue objective = recompute_objective(inst, sol);
      std::cout << "ok p=" << objective.days << " fprime=" << detail::format_double(objective.fractional)
                << '\n';
      return;
    }
    for (const Violation& v : report.violations) {
      std::cout << to_string(v.code);
      if (v.team) std::cout << " team=" << *v.team;
      if (v.day) std::cout << " day=" << *v.day;
      if (v.task) std::cout << " task=" << v.task->customer << '.' << v.task->task;
      std::cout << ": " << v.detail << '\n';
    }
    std::cout << report.violations.size() << " violation(s)\n";
    exit_code = 1;
  });

  // --- oracle --------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search for tiny instances");
  std::string oracle_instance;
  std::uint64_t oracle_max_nodes = OracleLimits{}.max_nodes;
  int oracle_max_tasks = OracleLimits{}.max_tasks;
  double oracle_time_limit = 0.0;
  oracle_cmd->add_option("--instance", oracle_instance, "Instance file")->required();
  oracle_cmd->add_option("--max-nodes", oracle_max_nodes, "Search node budget");
  oracle_cmd->add_option("--max-tasks", oracle_max_tasks, "Refuse instances with more tasks")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--time-limit", oracle_time_limit, "Wall-clock budget in seconds");
  oracle_cmd->callback([&] {
    const Instance inst = load_instance(oracle_instance);
    OracleLimits limits;
    limits.max_nodes = oracle_max_nodes;
    limits.max_tasks = oracle_max_tasks;
    limits.wall_clock_seconds = oracle_time_limit;
    const OracleResult result = solve_exact(inst, limits);
    std::cout << "p=" << result.optimal.days << " m=" << detail::format_double(result.optimal.last_moment)
              << " fprime=" << detail::format_double(result.optimal.fractional)
              << " nodes=" << result.nodes_explored << '\n';
  });

  // --- export-mip ----------------------------------------------------------
  auto* mip_cmd = app.add_subcommand("export-mip", "Write the LP model for an instance");
  std::string mip_instance, mip_out;
  int mip_horizon = 0;
  mip_cmd->add_option("--instance", mip_instance, "Instance file")->required();
  mip_cmd->add_option("--horizon", mip_horizon, "Day horizon H; defaults to the constructive makespan")
      ->check(CLI::PositiveNumber);
  mip_cmd->add_option("--out", mip_out, "Output file (stdout when omitted)");
  mip_cmd->callback([&] {
    const Instance inst = load_instance(mip_instance);
    const int horizon = mip_horizon > 0 ? mip_horizon : evaluate(inst, construct_greedy(inst)).days;
    ModelStats stats;
    if (mip_out.empty()) {
      stats = emit_model(inst, horizon, std::cout);
    } else {
      std::ofstream out = open_out(mip_out);
      stats = emit_model(inst, horizon, out);
      out.flush();
      if (!out) throw IoError("failed while writing '" + mip_out + "'");
      std::cout << "horizon=" << stats.horizon << " binaries=" << stats.num_binary
                << " continuous=" << stats.num_continuous << " integers=" << stats.num_general_integer
                << " constraints=" << stats.num_constraints << '\n';
    }
  });

  // --- bench ---------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "Run algorithms over a directory of instances");
  std::string bench_dir, bench_out, bench_config;
  std::vector<std::string> bench_algos, bench_params;
  int bench_repeats = 1, bench_ants = -1, bench_iters = -1;
  std::uint64_t bench_seed = 0;
  bench_cmd->add_option("--dir", bench_dir, "Directory of .mwsrpdt files")->required();
  bench_cmd->add_option("--algos", bench_algos, "Algorithms to run")
      ->required()
      ->check(CLI::IsMember({"constructive", "as", "mmas", "acs"}));
  bench_cmd->add_option("--repeats", bench_repeats, "Runs per (instance, algorithm)")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--ants", bench_ants, "Ants per iteration")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--iters", bench_iters, "Iterations")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed, "Base seed; repeat r uses seed+r");
  bench_cmd->add_option("--config", bench_config, "Parameter file with key = value lines");
  bench_cmd->add_option("--param", bench_params, "Override, e.g. --param alpha=2.5");
  bench_cmd->add_option("--out", bench_out, "CSV output file (stdout when omitted)");
  bench_cmd->callback([&] {
    std::vector<std::string> paths;
    try {
      for (const auto& entry : fs::directory_iterator(bench_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".mwsrpdt")
          paths.push_back(entry.path().string());
    } catch (const fs::filesystem_error& e) {
      throw IoError("cannot list '" + bench_dir + "': " + e.what());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<Instance> instances;
    instances.reserve(paths.size());
    for (const std::string& path : paths) instances.push_back(load_instance(path));

    std::vector<BenchJob> jobs;
    for (std::size_t i = 0; i < paths.size(); ++i)
      for (const std::string& algo : bench_algos)
        for (int repeat = 0; repeat < bench_repeats; ++repeat) {
          AcoParams params = make_params(algo, bench_config, bench_params, bench_ants, bench_iters,
                                         bench_seed + static_cast<std::uint64_t>(repeat));
          jobs.push_back({&instances[i], instance_id_from_path(paths[i]), algo, std::move(params)});
        }

    if (bench_out.empty()) {
      run_bench_jobs(jobs, std::cout);
    } else {
      std::ofstream out = open_out(bench_out);
      run_bench_jobs(jobs, out);
    }
  });

  // --- histogram -----------------------------------------------------------
  auto* hist_cmd = app.add_subcommand("histogram", "Days saved vs. the constructive heuristic");
  std::string hist_csv, hist_algo = "mmas", hist_out;
  hist_cmd->add_option("--bench-csv", hist_csv, "CSV produced by bench")->required();
  hist_cmd->add_option("--algo", hist_algo, "ACO column to compare against")
      ->check(CLI::IsMember({"as", "mmas", "acs"}));
  hist_cmd->add_option("--out", hist_out, "Output file (stdout when omitted)");
  hist_cmd->callback([&] {
    std::ifstream in(hist_csv);
    if (!in) throw IoError("cannot open '" + hist_csv + "' for reading");
    const std::vector<HistogramBin> bins = improvement_histogram(read_bench_csv(in), hist_algo);
    auto emit = [&](std::ostream& out) {
      out << "difference_days,count\n";
      for (const HistogramBin& bin : bins) out << bin.difference_days << ',' << bin.count << '\n';
    };
    if (hist_out.empty()) {
      emit(std::cout);
    } else {
      std::ofstream out = open_out(hist_out);
      emit(out);
      if (!out) throw IoError("failed while writing '" + hist_out + "'");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // app.exit prints help text or the flag error; help/version exit 0,
    // every real flag problem maps to 2.
    return app.exit(e) == 0 ? 0 : 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const StalledDayError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const InvalidInstanceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const InvalidConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
