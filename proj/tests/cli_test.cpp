#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "dumbwaiter/chain.hpp"
#include "dumbwaiter/chain_io.hpp"
#include "dumbwaiter/numfmt.hpp"
#include "oracles/chain_oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using dumbwaiter::cli::ExitCode;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dumbwaiter::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

double num(const json& j) { return dumbwaiter::parse_decimal(j.get<std::string>()); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("dumbwaiter_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  std::string chain3() {
    return write("chain3.json", R"({"schema_version": 1, "kind": "chain", "floors": 3,
      "call_probabilities": [0.1, 0.1, 0.1], "policy": {"type": "uniform"}})");
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SpatialReport) {
  const auto r = run({"spatial", "--legs", "100000", "--seed", "3", "--floors", "10",
                      "--floor-height", "4.2", "--speed", "45"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("analytic").at("mean"), "0.33333333333333331");
  EXPECT_NEAR(num(doc.at("empirical").at("mean")), 1.0 / 3.0, 0.005);
  const auto& b = doc.at("building");
  EXPECT_NEAR(num(b.at("seconds_exact")), 56.0 / 3.0, 1e-12);
  EXPECT_EQ(num(b.at("seconds_rounded")), 18.0);
  EXPECT_EQ(doc.dump(2) + "\n", r.out);
}

TEST_F(CliTest, SpatialShortRunHasNoEmpirical) {
  const auto r = run({"spatial", "--legs", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(json::parse(r.out).contains("empirical"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"spatial", "--legs", "0"}).code, int(ExitCode::kUsage));
  EXPECT_EQ(run({"spatial", "--legs", "10", "--floors", "10"}).code, int(ExitCode::kUsage));
  EXPECT_EQ(run({"spatial", "--bogus"}).code, int(ExitCode::kUsage));
  EXPECT_EQ(run({}).code, int(ExitCode::kUsage));
  EXPECT_EQ(run({"launch"}).code, int(ExitCode::kUsage));
  EXPECT_EQ(run({"--format", "xml", "spatial", "--legs", "5"}).code, int(ExitCode::kUsage));
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, CsvFormat) {
  const auto r = run({"--format", "csv", "spatial", "--legs", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "index,position,leg");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST_F(CliTest, Waitress) {
  const auto r = run({"waitress", "--batches", "1000000", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_LT(num(doc.at("mean_ratio")), 1.0);
  EXPECT_EQ(doc.at("violations"), 0);
  EXPECT_EQ(run({"waitress", "--batches", "0"}).code, int(ExitCode::kUsage));
}

TEST_F(CliTest, ChainEvalReferenceChain) {
  const auto r = run({"chain-eval", chain3(), "--mc-check", "100000", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("state_count"), 12);
  EXPECT_TRUE(doc.at("validation").at("irreducible"));
  const auto spec = dumbwaiter::chain::ChainSpec{
      3, {0.1, 0.1, 0.1}, dumbwaiter::chain::MovementPolicy::uniform(3)};
  EXPECT_NEAR(num(doc.at("objective")), dumbwaiter::chain::objective(spec).objective, 1e-12);
  for (const auto& t : doc.at("targets")) EXPECT_TRUE(t.at("mc_within_3se")) << t.dump();
}

TEST_F(CliTest, ChainEvalSmallBuildings) {
  auto r = run({"chain-eval", write("one.json", R"({"schema_version": 1, "floors": 1,
    "call_probabilities": [0.4], "policy": {"type": "uniform"}})")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(num(json::parse(r.out).at("objective")), 0.0);
  r = run({"chain-eval", write("two.json", R"({"schema_version": 1, "floors": 2,
    "call_probabilities": [0, 0], "policy": {"type": "uniform", "stay_prob": 0}})")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(num(json::parse(r.out).at("objective")), 2.0, 1e-12);
}

TEST_F(CliTest, ChainEvalStartAndMatrixOut) {
  const auto r = run({"chain-eval", chain3(), "--start", "2:101", "--matrix-out", path("m.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("start"), "2:101");
  const auto m = dumbwaiter::chain::matrix_from_json(slurp(path("m.json")));
  EXPECT_EQ(m.dimension(), 12u);
  EXPECT_EQ(run({"chain-eval", chain3(), "--start", "2:010"}).code, int(ExitCode::kUsage));
}

TEST_F(CliTest, ChainEvalBadSpec) {
  const auto r = run({"chain-eval", write("bad.json", R"({"schema_version": 1, "floors": 3,
    "call_probabilities": [0.1, 1.0, 0.1], "policy": {"type": "uniform"}})")});
  EXPECT_EQ(r.code, int(ExitCode::kUsage));
  EXPECT_NE(r.err.find("call_probabilities[1]"), std::string::npos) << r.err;
  EXPECT_EQ(run({"chain-eval", path("missing.json")}).code, int(ExitCode::kUsage));
}

TEST_F(CliTest, ChainEvalUnreachableTarget) {
  // Floor 1 never leaves, so the empty state on floor 2 is out of reach from it.
  namespace ch = dumbwaiter::chain;
  std::vector<std::vector<ch::Entry>> rows;
  const std::vector<ch::MoveProbs> floors{{0.0, 0.0, 1.0}, {0.0, 0.5, 0.5}};
  for (const auto& s : ch::enumerate_states(2)) {
    std::vector<ch::Entry> row;
    for (const auto& [key, p] : oracle::brute_force_row(2, {0.0, 0.0}, floors[s.floor - 1], s)) {
      row.push_back({static_cast<std::uint32_t>(ch::state_index(2, {key.first, key.second})), p});
    }
    rows.push_back(row);
  }
  const auto file = write("m.json", ch::matrix_to_json(ch::TransitionMatrix(2, rows)));
  const auto r = run({"chain-eval", file});
  EXPECT_EQ(r.code, int(ExitCode::kUnreachableTarget));
  EXPECT_NE(r.err.find("1:00"), std::string::npos) << r.err;
}

TEST_F(CliTest, ChainOptimizeTwoFloors) {
  const auto spec = write("two.json", R"({"schema_version": 1, "floors": 2,
    "call_probabilities": [0, 0], "policy": {"type": "uniform"}})");
  const auto r = run({"--out", path("res.json"), "chain-optimize", spec, "--population", "32",
                      "--generations", "60"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(slurp(path("res.json")));
  EXPECT_NEAR(num(doc.at("best_objective")), 2.0, 1e-6);
  EXPECT_FALSE(r.out.empty());
}

TEST_F(CliTest, ChainOptimizeGaConfigFile) {
  const auto ga = write("ga.json", R"({"schema_version": 1, "kind": "ga", "population_size": 10,
    "generations": 3, "seed": 5})");
  const auto r = run({"chain-optimize", chain3(), "--ga-config", ga});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("history").size(), 4u);
  EXPECT_EQ(doc.at("ga").at("seed"), 5);
  EXPECT_LE(num(doc.at("best_objective")), num(doc.at("baseline_objective")));
  const auto seeded = json::parse(run({"--seed", "8", "chain-optimize", chain3(), "--ga-config", ga}).out);
  EXPECT_EQ(seeded.at("ga").at("seed"), 8);
  EXPECT_EQ(run({"chain-optimize", chain3(), "--population", "1"}).code, int(ExitCode::kUsage));
}

TEST_F(CliTest, Fleet) {
  auto r = run({"fleet", "--elevators", "3", "--capacity", "5", "--passengers", "10", "--legs", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("counts"), json::parse("[4, 3, 3]"));
  r = run({"fleet", "--elevators", "2", "--capacity", "3", "--passengers", "10"});
  EXPECT_EQ(r.code, int(ExitCode::kInfeasibleFleet));
  EXPECT_NE(r.err.find("A <= m * n"), std::string::npos) << r.err;
  EXPECT_EQ(run({"fleet", "--elevators", "0", "--capacity", "3", "--passengers", "1"}).code,
            int(ExitCode::kUsage));
}

TEST_F(CliTest, FleetPooledMean) {
  const auto r = run({"fleet", "--elevators", "4", "--capacity", "2", "--passengers", "8",
                      "--legs", "1000000", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(num(json::parse(r.out).at("pooled").at("mean")), 1.0 / 3.0, 0.002);
}

TEST_F(CliTest, RepeatRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"spatial", "--legs", "20000"},
      {"waitress", "--batches", "20000"},
      {"chain-eval", chain3(), "--mc-check", "2000"},
      {"chain-optimize", chain3(), "--population", "8", "--generations", "3"},
      {"fleet", "--elevators", "3", "--capacity", "4", "--passengers", "7", "--legs", "2000"},
  };
  int k = 0;
  for (const auto& cmd : commands) {
    std::vector<std::string> a{"--seed", "77", "--out", path("a" + std::to_string(k))};
    std::vector<std::string> b{"--seed", "77", "--out", path("b" + std::to_string(k))};
    a.insert(a.end(), cmd.begin(), cmd.end());
    b.insert(b.end(), cmd.begin(), cmd.end());
    ASSERT_EQ(run(a).code, 0) << cmd[0];
    ASSERT_EQ(run(b).code, 0) << cmd[0];
    const auto first = slurp(path("a" + std::to_string(k)));
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, slurp(path("b" + std::to_string(k)))) << cmd[0];
    EXPECT_EQ(json::parse(first).dump(2) + "\n", first) << cmd[0];
    ++k;
  }
}
