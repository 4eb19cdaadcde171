#include "dumbwaiter/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <stdexcept>

#include "dumbwaiter/numfmt.hpp"
#include "dumbwaiter/rng.hpp"

namespace dumbwaiter::optimize {

namespace {

struct Individual {
  std::vector<double> genome;
  chain::MovementPolicy policy;
  double objective = std::numeric_limits<double>::infinity();
};

double evaluate(const chain::ChainSpec& spec, const chain::MovementPolicy& policy) {
  chain::ChainSpec candidate = spec;
  candidate.policy = policy;
  try {
    return chain::objective(candidate).objective;
  } catch (const chain::UnreachableTargetError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Stable order by objective so ties keep insertion order.
void rank(std::vector<Individual>& pop) {
  std::stable_sort(pop.begin(), pop.end(),
                   [](const Individual& a, const Individual& b) { return a.objective < b.objective; });
}

const Individual& tournament(const std::vector<Individual>& pop, std::size_t size, Rng& rng) {
  const Individual* best = &pop[rng.below(pop.size())];
  for (std::size_t k = 1; k < size; ++k) {
    const Individual& c = pop[rng.below(pop.size())];
    if (c.objective < best->objective) best = &c;
  }
  return *best;
}

}  // namespace

void GAConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("population_size must be at least 2");
  if (generations < 1) throw std::invalid_argument("generations must be at least 1");
  if (!(mutation_stddev > 0.0) || !std::isfinite(mutation_stddev)) {
    throw std::invalid_argument("mutation_stddev must be positive");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw std::invalid_argument("crossover_rate must lie in [0, 1]");
  }
  if (elite_count >= population_size) {
    throw std::invalid_argument("elite_count must be smaller than population_size");
  }
  if (tournament_size < 1) throw std::invalid_argument("tournament_size must be at least 1");
}

PolicyCodec::PolicyCodec(int n_floors, double irreducibility_floor)
    : n_floors_(n_floors), n_states_(chain::state_count(n_floors)), floor_(irreducibility_floor) {
  if (n_floors < 1 || n_floors > chain::kMaxFloors) throw std::invalid_argument("bad floor count");
  if (!(floor_ > 0.0 && floor_ <= chain::max_irreducibility_floor(n_floors))) {
    throw std::invalid_argument("irreducibility floor infeasible for this building");
  }
}

chain::MovementPolicy PolicyCodec::decode(std::span<const double> genome) const {
  if (genome.size() != genome_size()) throw std::invalid_argument("genome size mismatch");
  const std::size_t per = n_states_ / static_cast<std::size_t>(n_floors_);
  std::vector<chain::MoveProbs> rows(n_states_);
  for (std::size_t i = 0; i < n_states_; ++i) {
    const int c = static_cast<int>(i / per) + 1;
    const bool can_up = c < n_floors_;
    const bool can_down = c > 1;
    const double free = 1.0 - floor_ * (can_up + can_down);
    double w_up = can_up ? std::max(genome[3 * i], 0.0) : 0.0;
    double w_down = can_down ? std::max(genome[3 * i + 1], 0.0) : 0.0;
    double w_stay = std::max(genome[3 * i + 2], 0.0);
    double total = w_up + w_down + w_stay;
    if (!(total > 0.0) || !std::isfinite(total)) {
      w_up = can_up;
      w_down = can_down;
      w_stay = 1.0;
      total = w_up + w_down + w_stay;
    }
    auto& m = rows[i];
    m.up = can_up ? floor_ + free * (w_up / total) : 0.0;
    m.down = can_down ? floor_ + free * (w_down / total) : 0.0;
    m.stay = free * (w_stay / total);
  }
  return chain::MovementPolicy::per_state(n_floors_, std::move(rows));
}

std::vector<double> PolicyCodec::encode(const chain::MovementPolicy& policy) const {
  if (policy.n_floors() != n_floors_) throw std::invalid_argument("policy floor count mismatch");
  const std::size_t per = n_states_ / static_cast<std::size_t>(n_floors_);
  std::vector<double> genome(genome_size(), 0.0);
  for (std::size_t i = 0; i < n_states_; ++i) {
    const int c = static_cast<int>(i / per) + 1;
    const bool can_up = c < n_floors_;
    const bool can_down = c > 1;
    const double free = 1.0 - floor_ * (can_up + can_down);
    const auto& m = policy.at(i);
    if (free <= 0.0) {
      genome[3 * i] = can_up;
      genome[3 * i + 1] = can_down;
      genome[3 * i + 2] = 1.0;
      continue;
    }
    genome[3 * i] = can_up ? (m.up - floor_) / free : 0.0;
    genome[3 * i + 1] = can_down ? (m.down - floor_) / free : 0.0;
    genome[3 * i + 2] = m.stay / free;
  }
  return genome;
}

OptimizationResult optimize_policy(const chain::ChainSpec& spec, const GAConfig& ga,
                                   const CandidateObserver& observer) {
  spec.validate();
  ga.validate();
  const PolicyCodec codec(spec.floors, spec.irreducibility_floor);
  Rng rng(ga.seed);

  const auto uniform = chain::MovementPolicy::uniform(spec.floors);
  chain::MovementPolicy baseline =
      uniform.violations(spec.irreducibility_floor).empty()
          ? uniform
          : codec.decode(std::vector<double>(codec.genome_size(), 1.0));

  auto report = [&](std::size_t generation, const Individual& ind) {
    if (observer) observer(generation, ind.policy, ind.objective);
  };

  std::vector<Individual> pop;
  pop.reserve(ga.population_size);
  pop.push_back({codec.encode(baseline), baseline, evaluate(spec, baseline)});
  if (!(spec.policy == baseline) && pop.size() < ga.population_size) {
    pop.push_back({codec.encode(spec.policy), spec.policy, evaluate(spec, spec.policy)});
  }
  while (pop.size() < ga.population_size) {
    Individual ind;
    ind.genome.resize(codec.genome_size());
    for (auto& g : ind.genome) g = rng.uniform01();
    ind.policy = codec.decode(ind.genome);
    ind.objective = evaluate(spec, ind.policy);
    pop.push_back(std::move(ind));
  }
  for (const auto& ind : pop) report(0, ind);

  OptimizationResult result;
  result.baseline_objective = pop.front().objective;
  rank(pop);
  Individual best = pop.front();
  result.history.push_back(best.objective);

  for (std::size_t gen = 1; gen <= ga.generations; ++gen) {
    std::vector<Individual> next(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(ga.elite_count));
    while (next.size() < ga.population_size) {
      const Individual& a = tournament(pop, ga.tournament_size, rng);
      const Individual& b = tournament(pop, ga.tournament_size, rng);
      Individual child;
      child.genome = a.genome;
      if (rng.uniform01() < ga.crossover_rate) {
        for (std::size_t k = 0; k < child.genome.size(); ++k) {
          if (rng.next_u64() & 1U) child.genome[k] = b.genome[k];
        }
      }
      for (auto& g : child.genome) g += ga.mutation_stddev * rng.normal();
      child.policy = codec.decode(child.genome);
      child.objective = evaluate(spec, child.policy);
      report(gen, child);
      next.push_back(std::move(child));
    }
    pop = std::move(next);
    rank(pop);
    if (pop.front().objective < best.objective) best = pop.front();
    result.history.push_back(best.objective);
  }

  result.best_policy = std::move(best.policy);
  result.best_objective = best.objective;
  return result;
}

std::string result_to_json(const OptimizationResult& result, const GAConfig& ga) {
  using nlohmann::json;
  const int n = result.best_policy.n_floors();
  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "optimization_result";
  doc["n_floors"] = n;
  auto& states = doc["states"] = json::array();
  for (const auto& s : chain::enumerate_states(n)) states.push_back(chain::to_string(s, n));
  auto& policy = doc["policy"] = json::array();
  for (const auto& m : result.best_policy.rows()) {
    policy.push_back(json::array({format_decimal(m.up), format_decimal(m.down), format_decimal(m.stay)}));
  }
  doc["best_objective"] = format_decimal(result.best_objective);
  doc["baseline_objective"] = format_decimal(result.baseline_objective);
  doc["improvement_percent"] = format_decimal(result.improvement_percent());
  auto& history = doc["history"] = json::array();
  for (double h : result.history) history.push_back(format_decimal(h));
  doc["ga"] = {{"population_size", ga.population_size},
               {"generations", ga.generations},
               {"mutation_stddev", format_decimal(ga.mutation_stddev)},
               {"crossover_rate", format_decimal(ga.crossover_rate)},
               {"elite_count", ga.elite_count},
               {"tournament_size", ga.tournament_size},
               {"seed", ga.seed}};
  return doc.dump(2) + "\n";
}

}  // namespace dumbwaiter::optimize
