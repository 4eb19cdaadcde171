#include "dumbwaiter/optimize.hpp"

#include <gtest/gtest.h>

#include <json.hpp>
#include <stdexcept>
#include <vector>

#include "oracles/generators.hpp"

namespace ch = dumbwaiter::chain;
namespace op = dumbwaiter::optimize;

namespace {

op::GAConfig small_ga(std::uint64_t seed = 1) {
  op::GAConfig ga;
  ga.population_size = 24;
  ga.generations = 25;
  ga.seed = seed;
  return ga;
}

}  // namespace

TEST(GAConfig, Validation) {
  EXPECT_NO_THROW(op::GAConfig{}.validate());
  op::GAConfig ga;
  ga.population_size = 1;
  EXPECT_THROW(ga.validate(), std::invalid_argument);
  ga = {};
  ga.generations = 0;
  EXPECT_THROW(ga.validate(), std::invalid_argument);
  ga = {};
  ga.mutation_stddev = 0.0;
  EXPECT_THROW(ga.validate(), std::invalid_argument);
  ga = {};
  ga.crossover_rate = 1.5;
  EXPECT_THROW(ga.validate(), std::invalid_argument);
  ga = {};
  ga.elite_count = ga.population_size;
  EXPECT_THROW(ga.validate(), std::invalid_argument);
  ga = {};
  ga.tournament_size = 0;
  EXPECT_THROW(ga.validate(), std::invalid_argument);
}

TEST(Codec, EveryGenomeDecodesToValidPolicy) {
  gen::Source src(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = src.integer(1, 6);
    const double eps = src.uniform(1e-4, ch::max_irreducibility_floor(n));
    const op::PolicyCodec codec(n, eps);
    std::vector<double> genome(codec.genome_size());
    for (auto& g : genome) g = src.uniform(-3.0, 3.0);
    if (src.coin()) genome.assign(genome.size(), -1.0);
    const auto policy = codec.decode(genome);
    const auto v = policy.violations(eps);
    ASSERT_TRUE(v.empty()) << v.front();
  }
}

TEST(Codec, EncodeIsRightInverse) {
  gen::Source src(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = src.integer(1, 5);
    const op::PolicyCodec codec(n, 1e-3);
    const auto policy = gen::random_policy(src, n);
    const auto back = codec.decode(codec.encode(policy));
    for (std::size_t i = 0; i < policy.rows().size(); ++i) {
      EXPECT_NEAR(back.at(i).up, policy.at(i).up, 1e-12);
      EXPECT_NEAR(back.at(i).down, policy.at(i).down, 1e-12);
      EXPECT_NEAR(back.at(i).stay, policy.at(i).stay, 1e-12);
    }
  }
}

TEST(Codec, CornersAreReachable) {
  const op::PolicyCodec codec(2, 1e-3);
  const std::vector<double> genome{1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0};
  const auto policy = codec.decode(genome);
  for (const auto& row : policy.rows()) EXPECT_EQ(row.stay, 0.0);
}

TEST(Codec, InfeasibleFloor) {
  EXPECT_THROW(op::PolicyCodec(3, 0.6), std::invalid_argument);
  EXPECT_THROW(op::PolicyCodec(3, 0.0), std::invalid_argument);
}

TEST(Optimize, TwoFloorOptimumIsAlwaysMove) {
  // Objective 1/a + 1/b over the two crossing probabilities; minimum 2 at a = b = 1.
  ch::ChainSpec spec{2, {0.0, 0.0}, ch::MovementPolicy::uniform(2)};
  op::GAConfig ga;
  ga.population_size = 32;
  ga.generations = 60;
  const auto result = op::optimize_policy(spec, ga);
  EXPECT_NEAR(result.best_objective, 2.0, 1e-6);
  EXPECT_NEAR(result.baseline_objective, 4.0, 1e-9);
  EXPECT_NEAR(ch::objective(ch::ChainSpec{2, {0.0, 0.0}, result.best_policy}).objective,
              result.best_objective, 1e-12);
}

TEST(Optimize, NeverWorseThanBaseline) {
  const auto spec = gen::uniform_spec(3, 0.1);
  const auto result = op::optimize_policy(spec, small_ga());
  EXPECT_LE(result.best_objective, result.baseline_objective);
  EXPECT_NEAR(result.baseline_objective, ch::objective(spec).objective, 1e-12);
  EXPECT_GT(result.improvement_percent(), 0.0);
}

TEST(Optimize, HistoryIsNonIncreasing) {
  const auto ga = small_ga(5);
  const auto result = op::optimize_policy(gen::uniform_spec(3, 0.2), ga);
  ASSERT_EQ(result.history.size(), ga.generations + 1);
  EXPECT_LE(result.history.front(), result.baseline_objective);
  for (std::size_t g = 1; g < result.history.size(); ++g) {
    EXPECT_LE(result.history[g], result.history[g - 1]);
  }
  EXPECT_EQ(result.history.back(), result.best_objective);
}

TEST(Optimize, EveryCandidateIsValid) {
  const auto spec = gen::uniform_spec(3, 0.1);
  std::size_t seen = 0;
  auto observer = [&](std::size_t, const ch::MovementPolicy& policy, double objective) {
    ++seen;
    ASSERT_TRUE(policy.violations(spec.irreducibility_floor).empty());
    ASSERT_TRUE(std::isfinite(objective));
  };
  const auto ga = small_ga(6);
  op::optimize_policy(spec, ga, observer);
  EXPECT_GE(seen, ga.population_size * (ga.generations + 1) - ga.elite_count * ga.generations);
}

TEST(Optimize, Deterministic) {
  const auto spec = gen::uniform_spec(3, 0.15);
  const auto a = op::optimize_policy(spec, small_ga(9));
  const auto b = op::optimize_policy(spec, small_ga(9));
  EXPECT_EQ(a.best_policy, b.best_policy);
  EXPECT_EQ(a.history, b.history);
  EXPECT_EQ(op::result_to_json(a, small_ga(9)), op::result_to_json(b, small_ga(9)));
}

TEST(Optimize, InfeasibleFloorRejected) {
  auto spec = gen::uniform_spec(3, 0.1);
  spec.irreducibility_floor = 0.6;
  EXPECT_THROW(op::optimize_policy(spec, small_ga()), std::invalid_argument);
}

TEST(Optimize, ResultJsonShape) {
  const auto ga = small_ga(2);
  const auto result = op::optimize_policy(gen::uniform_spec(2, 0.1), ga);
  const auto text = op::result_to_json(result, ga);
  const auto doc = nlohmann::json::parse(text);
  EXPECT_EQ(doc.at("schema_version"), 1);
  EXPECT_EQ(doc.at("kind"), "optimization_result");
  EXPECT_EQ(doc.at("history").size(), ga.generations + 1);
  EXPECT_EQ(doc.dump(2) + "\n", text);
}
