#include "mwsrpdt/aco.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mwsrpdt/errors.hpp"

namespace mwsrpdt {

std::string to_string(ComponentEncoding encoding) {
  switch (encoding) {
    case ComponentEncoding::Arc: return "ct1";
    case ComponentEncoding::TeamArc: return "ct2";
    case ComponentEncoding::DayTeamArc: return "ct3";
    case ComponentEncoding::TeamTask: return "ct4";
  }
  return "?";
}

ComponentEncoding component_encoding_from_string(const std::string& s) {
  if (s == "ct1") return ComponentEncoding::Arc;
  if (s == "ct2") return ComponentEncoding::TeamArc;
  if (s == "ct3") return ComponentEncoding::DayTeamArc;
  if (s == "ct4") return ComponentEncoding::TeamTask;
  throw InvalidConfigError("unknown component encoding: '" + s +
                           "' (expected ct1, ct2, ct3, or ct4)");
}

std::string to_string(AcoVariant variant) {
  switch (variant) {
    case AcoVariant::AntSystem: return "as";
    case AcoVariant::MaxMinAntSystem: return "mmas";
    case AcoVariant::AntColonySystem: return "acs";
  }
  return "?";
}

AcoVariant aco_variant_from_string(const std::string& s) {
  if (s == "as") return AcoVariant::AntSystem;
  if (s == "mmas") return AcoVariant::MaxMinAntSystem;
  if (s == "acs") return AcoVariant::AntColonySystem;
  throw InvalidConfigError("unknown algorithm: '" + s + "' (expected as, mmas, or acs)");
}

PheromoneTable::PheromoneTable(double tau0) : tau0_(tau0), baseline_(tau0) {
  if (!(tau0 > 0.0) || !std::isfinite(tau0))
    throw InvalidConfigError("tau0 must be positive and finite");
}

double PheromoneTable::get(const ComponentKey& key) const {
  const auto it = table_.find(key);
  return it == table_.end() ? baseline_ : it->second;
}

void PheromoneTable::set(const ComponentKey& key, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw InvalidConfigError("trail values must be nonnegative and finite");
  table_[key] = tau;
}

void PheromoneTable::local_update(const ComponentKey& key, double phi) {
  table_[key] = (1.0 - phi) * get(key) + phi * tau0_;
}

void PheromoneTable::evaporate_baseline(double rho) { baseline_ *= (1.0 - rho); }

void PheromoneTable::clamp_all(double lo, double hi) {
  baseline_ = mmas_clamp(baseline_, lo, hi);
  for (auto& [key, tau] : table_) tau = mmas_clamp(tau, lo, hi);
}

double heuristic_value(const Candidate& candidate) { return 1.0 / candidate.end; }

std::vector<double> selection_probabilities(std::span<const Candidate> candidates,
                                            std::span<const ComponentKey> keys,
                                            const PheromoneTable& pheromones, double alpha,
                                            double beta) {
  std::vector<double> probabilities(candidates.size());
  double total = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double weight = std::pow(pheromones.get(keys[i]), alpha) *
                          std::pow(heuristic_value(candidates[i]), beta);
    probabilities[i] = weight;
    total += weight;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    // Degenerate weights (all zero or overflowed): uniform fallback.
    std::fill(probabilities.begin(), probabilities.end(), 1.0 / candidates.size());
    return probabilities;
  }
  for (double& p : probabilities) p /= total;
  return probabilities;
}

std::size_t select_probabilistic(std::span<const Candidate> candidates,
                                 std::span<const ComponentKey> keys,
                                 const PheromoneTable& pheromones, double alpha, double beta,
                                 Rng& rng) {
  const std::vector<double> probabilities =
      selection_probabilities(candidates, keys, pheromones, alpha, beta);
  const double draw = rng.uniform01();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (draw < cumulative) return i;
  }
  return probabilities.size() - 1;  // guard against rounding in the last bin
}

std::size_t select_pseudorandom(std::span<const Candidate> candidates,
                                std::span<const ComponentKey> keys,
                                const PheromoneTable& pheromones, double beta, double q0,
                                Rng& rng) {
  const double q = rng.uniform01();
  if (q < q0) {
    std::size_t best = 0;
    double best_score = pheromones.get(keys[0]) * std::pow(heuristic_value(candidates[0]), beta);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      const double score =
          pheromones.get(keys[i]) * std::pow(heuristic_value(candidates[i]), beta);
      if (score > best_score || (score == best_score && keys[i] < keys[best])) {
        best = i;
        best_score = score;
      }
    }
    return best;
  }
  return select_probabilistic(candidates, keys, pheromones, 1.0, beta, rng);
}

void offline_update(PheromoneTable& pheromones, std::span<const AntTrace> traces, double rho,
                    double Q) {
  // Total deposit per key; each trace contributes Q/f' once per key it
  // contains (set membership, not multiplicity).
  std::unordered_map<ComponentKey, double, ComponentKeyHash> deposits;
  std::vector<ComponentKey> unique;
  for (const AntTrace& trace : traces) {
    unique.assign(trace.components.begin(), trace.components.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const ComponentKey& key : unique) deposits[key] += Q / trace.fprime;
  }
  // Evaporate stored keys that receive no deposit; deposited keys are
  // evaporated and incremented together (entering the table from the
  // pre-update baseline when previously absent). The baseline itself decays
  // last so every read above saw the pre-update value.
  std::vector<std::pair<ComponentKey, double>> evaporated;
  for (const auto& [key, tau] : pheromones.entries())
    if (!deposits.contains(key)) evaporated.emplace_back(key, (1.0 - rho) * tau);
  for (const auto& [key, tau] : evaporated) pheromones.set(key, tau);
  for (const auto& [key, deposit] : deposits)
    pheromones.set(key, (1.0 - rho) * pheromones.get(key) + deposit);
  pheromones.evaporate_baseline(rho);
}

double mmas_clamp(double tau, double tau_min, double tau_max) {
  return std::min(std::max(tau, tau_min), tau_max);
}

AcoParams AcoParams::defaults(AcoVariant variant) {
  AcoParams p;
  p.variant = variant;
  switch (variant) {
    case AcoVariant::AntSystem:
      p.encoding = ComponentEncoding::TeamArc;
      p.alpha = 5.97;
      p.beta = 1.39;
      p.rho = 0.48;
      p.Q = 4.08;
      p.tau0 = 9.99;
      break;
    case AcoVariant::MaxMinAntSystem:
      p.encoding = ComponentEncoding::DayTeamArc;
      p.alpha = 6.47;
      p.beta = 5.78;
      p.rho = 0.02;
      p.Q = 9.96;
      p.tau0 = 8.88;
      p.tau_min = 0.02;
      p.tau_max = 5.69;
      break;
    case AcoVariant::AntColonySystem:
      p.encoding = ComponentEncoding::TeamArc;
      p.alpha = 9.29;
      p.beta = 0.53;
      p.rho = 0.82;
      p.Q = 8.91;
      p.tau0 = 7.28;
      p.phi = 0.12;
      p.q0 = 0.91;
      break;
  }
  p.num_ants = 100;
  p.max_iterations = 100;
  return p;
}

namespace {

void validate_params(const AcoParams& p) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha))
    throw InvalidConfigError("alpha must be nonnegative");
  if (!(p.beta >= 0.0) || !std::isfinite(p.beta))
    throw InvalidConfigError("beta must be nonnegative");
  if (!in_unit(p.rho)) throw InvalidConfigError("rho must lie in [0, 1]");
  if (!(p.Q > 0.0) || !std::isfinite(p.Q)) throw InvalidConfigError("Q must be positive");
  if (!(p.tau0 > 0.0) || !std::isfinite(p.tau0))
    throw InvalidConfigError("tau0 must be positive");
  if (p.num_ants < 1) throw InvalidConfigError("need at least one ant");
  if (p.max_iterations < 1) throw InvalidConfigError("need at least one iteration");
  if (p.variant == AcoVariant::MaxMinAntSystem) {
    if (!(p.tau_min > 0.0) || !(p.tau_max > 0.0) || p.tau_min > p.tau_max)
      throw InvalidConfigError("trail bounds must satisfy 0 < tau_min <= tau_max");
  }
  if (p.variant == AcoVariant::AntColonySystem) {
    if (!in_unit(p.phi)) throw InvalidConfigError("phi must lie in [0, 1]");
    if (!in_unit(p.q0)) throw InvalidConfigError("q0 must lie in [0, 1]");
  }
}

}  // namespace

RunResult run(const Instance& inst, const AcoParams& params, const RunBudget& budget) {
  validate_params(params);
  const int iterations =
      budget.max_iterations > 0 ? budget.max_iterations : params.max_iterations;
  const auto begun = std::chrono::steady_clock::now();

  PheromoneTable pheromones(params.tau0);
  RunResult result;
  AntTrace best_trace;
  bool have_best = false;

  std::vector<ComponentKey> key_buffer;
  std::vector<Solution> solutions(static_cast<std::size_t>(params.num_ants));
  std::vector<AntTrace> traces(static_cast<std::size_t>(params.num_ants));

  for (int iteration = 1; iteration <= iterations; ++iteration) {
    int iteration_best = -1;
    for (int ant = 0; ant < params.num_ants; ++ant) {
      Rng rng(derive_seed(params.seed,
                          {static_cast<std::uint64_t>(iteration), static_cast<std::uint64_t>(ant)}));
      const SelectionRule rule = [&](const SelectionContext& ctx,
                                     std::span<const Candidate> candidates) {
        key_buffer.clear();
        for (const Candidate& c : candidates)
          key_buffer.push_back(ComponentKey::make(params.encoding, ctx.day, ctx.team,
                                                  ctx.position, ExtendedVertex::of(c.task)));
        std::size_t picked;
        if (params.variant == AcoVariant::AntColonySystem) {
          picked = select_pseudorandom(candidates, key_buffer, pheromones, params.beta,
                                       params.q0, rng);
          pheromones.local_update(key_buffer[picked], params.phi);
        } else {
          picked = select_probabilistic(candidates, key_buffer, pheromones, params.alpha,
                                        params.beta, rng);
        }
        return picked;
      };
      ConstructionResult constructed = construct(inst, rule);
      AntTrace& trace = traces[static_cast<std::size_t>(ant)];
      trace.components.clear();
      for (const Decision& d : constructed.decisions)
        trace.components.push_back(
            ComponentKey::make(params.encoding, d.day, d.team, d.from, d.to));
      trace.fprime = evaluate(inst, constructed.solution).fractional;
      solutions[static_cast<std::size_t>(ant)] = std::move(constructed.solution);
      if (iteration_best < 0 ||
          trace.fprime < traces[static_cast<std::size_t>(iteration_best)].fprime)
        iteration_best = ant;
    }

    const AntTrace& elite = traces[static_cast<std::size_t>(iteration_best)];
    if (!have_best || elite.fprime < best_trace.fprime) {
      have_best = true;
      best_trace = elite;
      result.best = solutions[static_cast<std::size_t>(iteration_best)];
    }

    switch (params.variant) {
      case AcoVariant::AntSystem:
        offline_update(pheromones, traces, params.rho, params.Q);
        break;
      case AcoVariant::MaxMinAntSystem: {
        const AntTrace& depositor = params.deposit_global_best ? best_trace : elite;
        offline_update(pheromones, {&depositor, 1}, params.rho, params.Q);
        pheromones.clamp_all(params.tau_min, params.tau_max);
        break;
      }
      case AcoVariant::AntColonySystem:
        offline_update(pheromones, {&elite, 1}, params.rho, params.Q);
        break;
    }

    result.history.push_back({iteration, result.best.days, best_trace.fprime});
    if (budget.wall_clock_seconds > 0.0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - begun;
      if (elapsed.count() > budget.wall_clock_seconds) break;
    }
  }

  result.best_objective = evaluate(inst, result.best);
  return result;
}

}  // namespace mwsrpdt
