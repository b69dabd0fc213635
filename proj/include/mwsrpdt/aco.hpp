#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "mwsrpdt/component.hpp"
#include "mwsrpdt/constructive.hpp"
#include "mwsrpdt/rng.hpp"
#include "mwsrpdt/types.hpp"

namespace mwsrpdt {

enum class AcoVariant { AntSystem, MaxMinAntSystem, AntColonySystem };

std::string to_string(AcoVariant variant);
AcoVariant aco_variant_from_string(const std::string& s);

// Sparse trail storage with dense read semantics: a key is materialized only
// by its first deposit or local update, and every absent key shares one
// baseline value. The baseline starts at tau0 and evaporates and clamps
// together with the stored entries, so lookups match a table that held every
// key explicitly while DayTeamArc's key space stays affordable.
class PheromoneTable {
 public:
  explicit PheromoneTable(double tau0);

  double tau0() const { return tau0_; }
  double baseline() const { return baseline_; }
  double get(const ComponentKey& key) const;
  void set(const ComponentKey& key, double tau);
  std::size_t stored_count() const { return table_.size(); }

  // Moves the trail toward tau0: tau <- (1 - phi) * tau + phi * tau0.
  void local_update(const ComponentKey& key, double phi);
  // Evaporates the shared value read by every absent key.
  void evaporate_baseline(double rho);
  // Clamps every trail, stored or absent, into [lo, hi].
  void clamp_all(double lo, double hi);

  const std::unordered_map<ComponentKey, double, ComponentKeyHash>& entries() const {
    return table_;
  }

 private:
  double tau0_;
  double baseline_;
  std::unordered_map<ComponentKey, double, ComponentKeyHash> table_;
};

// One ant's outcome: its objective and the components of every move it made
// (executions and depot returns); duplicates are allowed and deduplicated by
// the offline update's set semantics.
struct AntTrace {
  double fprime = 0.0;
  std::vector<ComponentKey> components;
};

// Attractiveness of a candidate: the reciprocal of its completion moment, so
// earlier-ending tasks are preferred (consistent with the greedy rule).
double heuristic_value(const Candidate& candidate);

// Normalized selection probabilities tau^alpha * eta^beta / sum. Degenerate
// weight vectors (all zero, or non-finite sums) fall back to uniform.
std::vector<double> selection_probabilities(std::span<const Candidate> candidates,
                                            std::span<const ComponentKey> keys,
                                            const PheromoneTable& pheromones, double alpha,
                                            double beta);

// Roulette draw over selection_probabilities; returns the candidate index.
std::size_t select_probabilistic(std::span<const Candidate> candidates,
                                 std::span<const ComponentKey> keys,
                                 const PheromoneTable& pheromones, double alpha, double beta,
                                 Rng& rng);

// Pseudo-random proportional rule: with probability q0 the argmax of
// tau * eta^beta (ties by lexicographically smallest key), otherwise a
// probabilistic draw with alpha = 1.
std::size_t select_pseudorandom(std::span<const Candidate> candidates,
                                std::span<const ComponentKey> keys,
                                const PheromoneTable& pheromones, double beta, double q0,
                                Rng& rng);

// Evaporates every trail by (1 - rho) -- stored entries individually, absent
// keys through the shared baseline -- then deposits Q / fprime for each trace
// whose component set contains the key (set semantics per trace). Absent
// deposited keys enter the table from the pre-update baseline.
void offline_update(PheromoneTable& pheromones, std::span<const AntTrace> traces, double rho,
                    double Q);

double mmas_clamp(double tau, double tau_min, double tau_max);

struct AcoParams {
  AcoVariant variant = AcoVariant::AntSystem;
  ComponentEncoding encoding = ComponentEncoding::TeamArc;
  double alpha = 1.0;
  double beta = 1.0;
  double rho = 0.5;
  double phi = 0.0;      // ACS local-update strength
  double q0 = 0.0;       // ACS exploitation probability
  double Q = 1.0;        // deposit numerator
  double tau0 = 1.0;     // initial trail
  double tau_min = 0.0;  // MMAS clamp bounds
  double tau_max = 0.0;
  int num_ants = 100;
  int max_iterations = 100;
  std::uint64_t seed = 0;
  // MMAS normally deposits the iteration-best ant; optionally the global best.
  bool deposit_global_best = false;

  // Tuned defaults per variant (encoding included).
  static AcoParams defaults(AcoVariant variant);
};

struct RunBudget {
  int max_iterations = 0;          // > 0 overrides params.max_iterations
  double wall_clock_seconds = 0.0; // > 0 stops after the first iteration past the cap
};

struct HistoryEntry {
  int iteration = 0;
  int best_days = 0;       // best-so-far p
  double best_fprime = 0;  // best-so-far f'
};

struct RunResult {
  Solution best;
  ObjectiveValue best_objective;
  std::vector<HistoryEntry> history;
};

// Runs the selected variant: every iteration, num_ants ants construct
// solutions guided by trails and 1/end attractiveness; then AntSystem
// deposits all ants, MaxMinAntSystem deposits one elite ant and clamps, and
// AntColonySystem deposits the iteration best (its ants also locally update
// trails during construction, strictly sequentially). Each ant draws from an
// independent RNG substream of (seed, iteration, ant).
// Throws InvalidConfigError on bad parameters and propagates StalledDayError.
RunResult run(const Instance& inst, const AcoParams& params, const RunBudget& budget = {});

}  // namespace mwsrpdt
