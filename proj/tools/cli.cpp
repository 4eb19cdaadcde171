#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "dumbwaiter/chain.hpp"
#include "dumbwaiter/chain_io.hpp"
#include "dumbwaiter/config.hpp"
#include "dumbwaiter/fleet.hpp"
#include "dumbwaiter/numfmt.hpp"
#include "dumbwaiter/optimize.hpp"
#include "dumbwaiter/rng.hpp"
#include "dumbwaiter/spatial.hpp"

namespace dumbwaiter::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const Common& common, std::ostream& out, const std::string& text) {
  if (common.out_path.empty() || common.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream file(common.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + common.out_path);
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json header(const char* command, std::uint64_t seed) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["seed"] = seed;
  return j;
}

json moments_json(const spatial::LegMoments& m) {
  return {{"mean", format_decimal(m.mean)},
          {"variance", format_decimal(m.variance)},
          {"lag1_product_moment", format_decimal(m.lag1_product_moment)},
          {"lag1_autocovariance", format_decimal(m.lag1_autocovariance)},
          {"lag1_autocorrelation", format_decimal(m.lag1_autocorrelation)},
          {"lag2_autocorrelation", format_decimal(m.lag2_autocorrelation)}};
}

// --- spatial ---------------------------------------------------------------

struct SpatialArgs {
  std::size_t legs = 0;
  std::optional<int> floors;
  std::optional<double> floor_height;
  std::optional<double> speed;
};

std::string cmd_spatial(const SpatialArgs& a, const Common& c) {
  if (a.legs < 1) throw UsageError("--legs must be at least 1");
  const bool any_building = a.floors || a.floor_height || a.speed;
  const bool all_building = a.floors && a.floor_height && a.speed;
  if (any_building && !all_building) {
    throw UsageError("--floors, --floor-height and --speed must be given together");
  }
  std::optional<spatial::BuildingSpec> building;
  if (all_building) {
    building = spatial::BuildingSpec{*a.floors, *a.floor_height, *a.speed};
    try {
      building->validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  const auto calls = spatial::generate_calls(a.legs, c.seed);
  const auto legs = spatial::leg_series(calls);

  if (c.format == "csv") {
    std::string csv = "index,position,leg\n";
    const auto& x = calls.positions();
    for (std::size_t k = 0; k < x.size(); ++k) {
      csv += std::to_string(k) + "," + format_decimal(x[k]) + ",";
      if (k < legs.size()) csv += format_decimal(legs.legs[k]);
      csv += "\n";
    }
    return csv;
  }

  json j = header("spatial", c.seed);
  j["legs"] = legs.size();
  const double total = spatial::total_distance(legs);
  j["total_distance"] = format_decimal(total);
  j["mean_leg"] = format_decimal(total / static_cast<double>(legs.size()));
  j["analytic"] = moments_json(spatial::analytic_leg_moments());
  if (legs.size() >= 3) j["empirical"] = moments_json(spatial::empirical_leg_moments(legs));
  if (building) {
    const double exact = spatial::seconds_per_call(*building, spatial::analytic_leg_moments().mean);
    const double rounded = spatial::rounded_to_tenth_minute_seconds(exact);
    j["building"] = {
        {"floors", building->floors},
        {"floor_height_m", format_decimal(building->floor_height_m)},
        {"elevator_speed_m_per_min", format_decimal(building->elevator_speed_m_per_min)},
        {"total_height_m", format_decimal(building->total_height_m())},
        {"mean_leg_m", format_decimal(building->total_height_m() / 3.0)},
        {"seconds_exact", format_decimal(exact)},
        {"seconds_rounded", format_decimal(rounded)},
        {"seconds_empirical",
         format_decimal(spatial::seconds_per_call(*building, total / static_cast<double>(legs.size())))}};
  }
  return dump(j);
}

// --- waitress --------------------------------------------------------------

std::string cmd_waitress(long long batches, const Common& c) {
  if (batches < 1) throw UsageError("--batches must be at least 1");
  const auto s = spatial::summarize_waitress(static_cast<std::size_t>(batches), c.seed);
  if (c.format == "csv") {
    return "metric,value\nbatches," + std::to_string(s.batches) + "\nmean_ratio," +
           format_decimal(s.mean_ratio) + "\nstrict_improvements," +
           std::to_string(s.strict_improvements) + "\nviolations," + std::to_string(s.violations) + "\n";
  }
  json j = header("waitress", c.seed);
  j["batches"] = s.batches;
  j["mean_ratio"] = format_decimal(s.mean_ratio);
  j["strict_improvements"] = s.strict_improvements;
  j["violations"] = s.violations;
  return dump(j);
}

// --- chain-eval ------------------------------------------------------------

struct ChainEvalArgs {
  std::string spec_path;
  std::size_t mc_episodes = 0;
  std::string start;
  std::string matrix_out;
};

chain::ChainSpec load_chain(const std::string& path) {
  return config::parse_chain(read_file(path)).to_spec();
}

// A chain spec, or a serialized transition matrix (recognised by "rows").
chain::TransitionMatrix load_matrix(const std::string& path) {
  const auto text = read_file(path);
  const auto probe = json::parse(text, nullptr, false);
  if (probe.is_object() && probe.contains("rows")) {
    try {
      return chain::matrix_from_json(text);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return chain::build_transition_matrix(config::parse_chain(text).to_spec());
}

std::string cmd_chain_eval(const ChainEvalArgs& a, const Common& c) {
  const auto matrix = load_matrix(a.spec_path);
  const int n = matrix.n_floors();
  std::optional<chain::CompositeState> start;
  if (!a.start.empty()) {
    try {
      start = chain::parse_state(a.start, n);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--start: ") + e.what());
    }
  }
  if (!a.matrix_out.empty()) {
    std::ofstream f(a.matrix_out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + a.matrix_out);
    f << chain::matrix_to_json(matrix);
  }

  const auto validation = chain::validate_chain(matrix);
  const auto report = chain::objective(matrix, start);

  std::vector<chain::McEstimate> mc;
  if (a.mc_episodes > 0) {
    if (start) {
      for (int i = 1; i <= n; ++i) {
        mc.push_back(chain::monte_carlo_hitting_time(matrix, chain::empty_state(i), std::span(&*start, 1),
                                                     a.mc_episodes,
                                                     derive_seed(c.seed, static_cast<std::uint64_t>(i))));
      }
    } else {
      mc = chain::monte_carlo_objective(matrix, a.mc_episodes, c.seed);
    }
  }

  if (c.format == "csv") {
    std::string csv = "target,expected_hitting_time";
    if (!mc.empty()) csv += ",mc_mean,mc_standard_error";
    csv += "\n";
    for (int i = 1; i <= n; ++i) {
      const auto k = static_cast<std::size_t>(i - 1);
      csv += chain::to_string(chain::empty_state(i), n) + "," + format_decimal(report.per_target[k]);
      if (!mc.empty()) csv += "," + format_decimal(mc[k].mean) + "," + format_decimal(mc[k].standard_error);
      csv += "\n";
    }
    return csv;
  }

  json j = header("chain-eval", c.seed);
  j["floors"] = n;
  j["state_count"] = matrix.dimension();
  j["nonzeros"] = matrix.nonzeros();
  j["start"] = start ? chain::to_string(*start, n) : "default";
  j["validation"] = {{"irreducible", validation.irreducible},
                     {"closed_classes", validation.closed_classes},
                     {"transient_states", validation.transient_states},
                     {"row_sum_violations", validation.row_sum_violations.size()},
                     {"negative_entries", validation.negative_entries.size()},
                     {"boundary_violations", validation.boundary_violations.size()},
                     {"movement_violations", validation.movement_violations.size()}};
  json targets = json::array();
  double mc_total = 0.0, mc_var = 0.0;
  for (int i = 1; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    json t = {{"target", chain::to_string(chain::empty_state(i), n)},
              {"expected_hitting_time", format_decimal(report.per_target[k])}};
    if (!report.from_start.empty()) {
      json from = json::object();
      for (int s = 1; s <= n; ++s) {
        if (s != i) {
          from[chain::to_string(chain::empty_state(s), n)] =
              format_decimal(report.from_start[k][static_cast<std::size_t>(s - 1)]);
        }
      }
      t["from_start"] = std::move(from);
    }
    if (!mc.empty()) {
      const auto& e = mc[k];
      t["mc_mean"] = format_decimal(e.mean);
      t["mc_standard_error"] = format_decimal(e.standard_error);
      const double diff = std::abs(e.mean - report.per_target[k]);
      t["mc_within_3se"] = diff <= 3.0 * e.standard_error;
      mc_total += e.mean;
      mc_var += e.standard_error * e.standard_error;
    }
    targets.push_back(std::move(t));
  }
  j["targets"] = std::move(targets);
  j["objective"] = format_decimal(report.objective);
  if (!mc.empty()) {
    j["mc_episodes"] = a.mc_episodes;
    j["mc_objective"] = format_decimal(mc_total);
    j["mc_objective_standard_error"] = format_decimal(std::sqrt(mc_var));
  }
  return dump(j);
}

// --- chain-optimize --------------------------------------------------------

struct OptimizeArgs {
  std::string spec_path;
  std::string ga_path;
  std::optional<std::size_t> population;
  std::optional<std::size_t> generations;
  std::optional<double> mutation_stddev;
  std::optional<double> crossover_rate;
  std::optional<std::size_t> elites;
  std::optional<std::size_t> tournament;
};

std::string cmd_chain_optimize(const OptimizeArgs& a, const Common& c, bool seed_given,
                               std::string& summary) {
  const auto spec = load_chain(a.spec_path);
  optimize::GAConfig ga;
  if (!a.ga_path.empty()) ga = config::parse_ga(read_file(a.ga_path));
  if (seed_given || a.ga_path.empty()) ga.seed = c.seed;
  if (a.population) ga.population_size = *a.population;
  if (a.generations) ga.generations = *a.generations;
  if (a.mutation_stddev) ga.mutation_stddev = *a.mutation_stddev;
  if (a.crossover_rate) ga.crossover_rate = *a.crossover_rate;
  if (a.elites) ga.elite_count = *a.elites;
  if (a.tournament) ga.tournament_size = *a.tournament;
  try {
    ga.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto result = optimize::optimize_policy(spec, ga);
  summary = "baseline objective " + format_decimal(result.baseline_objective) +
            "\noptimized objective " + format_decimal(result.best_objective) + "\nimprovement " +
            format_decimal(result.improvement_percent()) + "%\n";
  if (c.format == "csv") {
    std::string csv = "generation,best_objective\n";
    for (std::size_t g = 0; g < result.history.size(); ++g) {
      csv += std::to_string(g) + "," + format_decimal(result.history[g]) + "\n";
    }
    return csv;
  }
  return optimize::result_to_json(result, ga);
}

// --- fleet -----------------------------------------------------------------

struct FleetArgs {
  long long elevators = 1;
  long long capacity = 1;
  long long passengers = 0;
  long long legs = 10000;
};

std::string cmd_fleet(const FleetArgs& a, const Common& c) {
  if (a.elevators < 1 || a.elevators > 1'000'000) throw UsageError("--elevators must be in [1, 1000000]");
  if (a.capacity < 1 || a.capacity > INT32_MAX) throw UsageError("--capacity must be at least 1");
  if (a.passengers < 0) throw UsageError("--passengers cannot be negative");
  if (a.legs < 3) throw UsageError("--legs must be at least 3");
  const fleet::FleetSpec spec{static_cast<int>(a.elevators), static_cast<int>(a.capacity), a.passengers};
  const auto metrics = fleet::fleet_simulation(spec, static_cast<std::size_t>(a.legs), c.seed);

  if (c.format == "csv") {
    std::string csv = "elevator,seed,passengers,mean,variance,lag1_autocorrelation,total_distance\n";
    for (std::size_t i = 0; i < metrics.elevators.size(); ++i) {
      const auto& e = metrics.elevators[i];
      csv += std::to_string(i) + "," + std::to_string(e.seed) + "," +
             std::to_string(metrics.assignment.counts[i]) + "," + format_decimal(e.moments.mean) + "," +
             format_decimal(e.moments.variance) + "," + format_decimal(e.moments.lag1_autocorrelation) +
             "," + format_decimal(e.total_distance) + "\n";
    }
    return csv;
  }

  json j = header("fleet", c.seed);
  j["elevators"] = spec.elevators;
  j["capacity"] = spec.capacity;
  j["passengers"] = spec.passengers;
  j["legs_per_elevator"] = a.legs;
  j["feasible"] = metrics.assignment.feasible;
  j["counts"] = metrics.assignment.counts;
  json cars = json::array();
  for (std::size_t i = 0; i < metrics.elevators.size(); ++i) {
    const auto& e = metrics.elevators[i];
    cars.push_back({{"elevator", i},
                    {"seed", e.seed},
                    {"passengers", metrics.assignment.counts[i]},
                    {"moments", moments_json(e.moments)},
                    {"total_distance", format_decimal(e.total_distance)}});
  }
  j["per_elevator"] = std::move(cars);
  j["pooled"] = moments_json(metrics.pooled);
  j["total_distance"] = format_decimal(metrics.total_distance);
  return dump(j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dumbwaiter elevator models: spatial legs, Markov chain hitting times, fleets",
               "dumbwaiter"};
  app.set_version_flag("--version", "dumbwaiter 0.1.0");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--out", common.out_path, "Write the report to PATH instead of stdout");
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  auto* seed_opt = app.add_option("--seed", common.seed, "Master RNG seed")->capture_default_str();

  SpatialArgs spatial_args;
  auto* spatial_cmd = app.add_subcommand("spatial", "Simulate the continuous dumbwaiter and compare leg moments");
  spatial_cmd->add_option("--legs", spatial_args.legs, "Number of legs to simulate")->required();
  spatial_cmd->add_option("--floors", spatial_args.floors, "Building floors");
  spatial_cmd->add_option("--floor-height", spatial_args.floor_height, "Floor height in metres");
  spatial_cmd->add_option("--speed", spatial_args.speed, "Elevator speed in metres per minute");

  long long batches = 0;
  auto* waitress_cmd = app.add_subcommand("waitress", "Compare in-order and batched service of call triples");
  waitress_cmd->add_option("--batches", batches, "Number of random triples")->required();

  ChainEvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("chain-eval", "Exact first-hitting-time objective of a chain spec");
  eval_cmd->add_option("spec", eval_args.spec_path, "Chain spec JSON or transition matrix JSON")->required();
  eval_cmd->add_option("--mc-check", eval_args.mc_episodes, "Append Monte Carlo estimates from EPISODES runs");
  eval_cmd->add_option("--start", eval_args.start, "Start state FLOOR:BITS instead of the default average");
  eval_cmd->add_option("--matrix-out", eval_args.matrix_out, "Also write the transition matrix JSON here");

  OptimizeArgs opt_args;
  auto* opt_cmd = app.add_subcommand("chain-optimize", "Genetic-algorithm search for a better movement policy");
  opt_cmd->add_option("spec", opt_args.spec_path, "Chain spec JSON")->required();
  opt_cmd->add_option("--ga-config", opt_args.ga_path, "GA config JSON");
  opt_cmd->add_option("--population", opt_args.population, "Population size (default 64)");
  opt_cmd->add_option("--generations", opt_args.generations, "Generations (default 200)");
  opt_cmd->add_option("--mutation-stddev", opt_args.mutation_stddev, "Gaussian mutation stddev (default 0.1)");
  opt_cmd->add_option("--crossover-rate", opt_args.crossover_rate, "Crossover probability (default 0.7)");
  opt_cmd->add_option("--elites", opt_args.elites, "Elites kept per generation (default 2)");
  opt_cmd->add_option("--tournament", opt_args.tournament, "Tournament size (default 3)");

  FleetArgs fleet_args;
  auto* fleet_cmd = app.add_subcommand("fleet", "Split passengers across elevators and simulate each");
  fleet_cmd->add_option("--elevators", fleet_args.elevators, "Number of elevators m")->required();
  fleet_cmd->add_option("--capacity", fleet_args.capacity, "Capacity n per elevator")->required();
  fleet_cmd->add_option("--passengers", fleet_args.passengers, "Total passengers A")->required();
  fleet_cmd->add_option("--legs", fleet_args.legs, "Legs simulated per elevator")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(e.what()) + "\n" : app.help());
      return kOk;
    }
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    std::string text;
    std::string summary;
    if (*spatial_cmd) {
      text = cmd_spatial(spatial_args, common);
    } else if (*waitress_cmd) {
      text = cmd_waitress(batches, common);
    } else if (*eval_cmd) {
      text = cmd_chain_eval(eval_args, common);
    } else if (*opt_cmd) {
      text = cmd_chain_optimize(opt_args, common, seed_opt->count() > 0, summary);
    } else if (*fleet_cmd) {
      text = cmd_fleet(fleet_args, common);
    }
    write_output(common, out, text);
    if (!summary.empty()) (common.out_path.empty() ? err : out) << summary;
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const config::ConfigError& e) {
    err << "spec error: " << e.what() << "\n";
    return kUsage;
  } catch (const chain::UnreachableTargetError& e) {
    err << "unreachable target: " << e.what() << "\n";
    return kUnreachableTarget;
  } catch (const fleet::InfeasibleFleetError& e) {
    err << e.what() << "\nfeasibility requires A <= m * n\n";
    return kInfeasibleFleet;
  } catch (const chain::ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace dumbwaiter::cli
