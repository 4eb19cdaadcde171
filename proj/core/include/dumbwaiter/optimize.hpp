#pragma once

// Genetic-algorithm search over movement policies, minimizing the chain's
// summed first-hitting-time objective.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dumbwaiter/chain.hpp"

namespace dumbwaiter::optimize {

struct GAConfig {
  std::size_t population_size = 64;
  std::size_t generations = 200;
  double mutation_stddev = 0.1;
  double crossover_rate = 0.7;
  std::size_t elite_count = 2;
  std::size_t tournament_size = 3;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument.
  void validate() const;

  bool operator==(const GAConfig&) const = default;
};

struct OptimizationResult {
  chain::MovementPolicy best_policy;
  double best_objective = 0.0;
  double baseline_objective = 0.0;
  /// Best objective of the initial population, then after each generation.
  /// Size generations + 1; non-increasing when elite_count >= 1.
  std::vector<double> history;

  double improvement_percent() const noexcept {
    return baseline_objective > 0.0 ? 100.0 * (baseline_objective - best_objective) / baseline_objective
                                    : 0.0;
  }
};

/// Maps unconstrained genes onto valid policies.
///
/// Three genes (up, down, stay) per composite state. A state's moves get
/// probability floor + free * max(g, 0) / sum(max(g, 0)) over the allowed
/// directions (uniform when every weight is 0), where each connected-floor
/// move carries the irreducibility floor and `free` is what remains. Any
/// genome therefore decodes to a policy that satisfies the simplex, boundary
/// and floor constraints, and corner policies (e.g. stay = 0) are reachable.
class PolicyCodec {
 public:
  PolicyCodec(int n_floors, double irreducibility_floor);

  std::size_t genome_size() const noexcept { return 3 * n_states_; }
  chain::MovementPolicy decode(std::span<const double> genome) const;
  /// Right inverse of decode for policies that respect the floor.
  std::vector<double> encode(const chain::MovementPolicy& policy) const;

 private:
  int n_floors_;
  std::size_t n_states_;
  double floor_;
};

using CandidateObserver =
    std::function<void(std::size_t generation, const chain::MovementPolicy&, double objective)>;

/// Generational GA: tournament selection, uniform crossover, Gaussian
/// mutation on every gene, elitism. The initial population holds the uniform
/// policy (or its nearest feasible decode when the floor exceeds 1/3), the
/// spec's own policy, and random genomes. Fitness is the exact objective.
/// Deterministic in (spec, ga).
OptimizationResult optimize_policy(const chain::ChainSpec& spec, const GAConfig& ga,
                                   const CandidateObserver& observer = {});

/// Versioned JSON result. Policy rows follow chain::enumerate_states order
/// and all reals are 17-digit decimal strings.
std::string result_to_json(const OptimizationResult& result, const GAConfig& ga);

}  // namespace dumbwaiter::optimize
