#pragma once

// Versioned JSON documents shared by the CLI and tests.
//
// Every document is an object with "schema_version": 1 and a "kind" of
// "chain" | "ga" | "fleet" | "building". A document without "kind" is
// recognised by its fields (call_probabilities, population_size, elevators,
// floor_height_m). Unknown fields are rejected at every level.
//
//   chain:    {"floors": N, "call_probabilities": [p1..pN],
//              "irreducibility_floor": 0.001 (optional),
//              "policy": {"type": "uniform", "stay_prob": s (optional)}
//                      | {"type": "explicit", "floors": [[up, down, stay], ...N]}
//                      | {"type": "explicit", "states": [[up, down, stay], ...]}}
//   ga:       {"population_size", "generations", "mutation_stddev",
//              "crossover_rate", "elite_count", "tournament_size", "seed"}
//              (all optional, defaults as optimize::GAConfig)
//   fleet:    {"elevators", "capacity", "passengers"}
//   building: {"floors", "floor_height_m", "elevator_speed_m_per_min"}
//
// Reals may be JSON numbers or decimal strings. "states" rows follow
// chain::enumerate_states order.
//
// emit() writes sorted keys with two-space indentation and always spells out
// optional fields, so emit(parse(emit(d))) == emit(d).

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dumbwaiter/chain.hpp"
#include "dumbwaiter/fleet.hpp"
#include "dumbwaiter/optimize.hpp"
#include "dumbwaiter/spatial.hpp"

namespace dumbwaiter::config {

enum class ErrorKind {
  kSyntax,
  kUnknownField,
  kMissingField,
  kWrongType,
  kInvariantViolation,
  kUnsupportedVersion,
};

const char* to_string(ErrorKind kind) noexcept;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ErrorKind kind, std::string path, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  /// Offending field, e.g. "call_probabilities[1]"; empty for syntax errors.
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorKind kind_;
  std::string path_;
};

enum class PolicyKind { kUniform, kPerFloor, kPerState };

struct PolicyDescriptor {
  PolicyKind kind = PolicyKind::kUniform;
  std::optional<double> stay_prob;       // kUniform only
  std::vector<chain::MoveProbs> rows;    // kPerFloor / kPerState

  chain::MovementPolicy materialize(int floors) const;

  bool operator==(const PolicyDescriptor&) const = default;
};

struct ChainDocument {
  int floors = 1;
  std::vector<double> call_probabilities{0.0};
  PolicyDescriptor policy;
  double irreducibility_floor = chain::kDefaultIrreducibilityFloor;

  chain::ChainSpec to_spec() const;

  bool operator==(const ChainDocument&) const = default;
};

using Payload =
    std::variant<ChainDocument, optimize::GAConfig, fleet::FleetSpec, spatial::BuildingSpec>;

struct CanonicalDocument {
  int schema_version = 1;
  Payload payload;

  bool operator==(const CanonicalDocument&) const = default;
};

/// Validates syntax, schema and every invariant of the payload type.
/// Throws ConfigError naming the first offending field.
CanonicalDocument parse(std::string_view bytes);

std::string emit(const CanonicalDocument& document);

/// parse() that also insists on a chain document.
ChainDocument parse_chain(std::string_view bytes);
/// parse() that also insists on a GA document.
optimize::GAConfig parse_ga(std::string_view bytes);

}  // namespace dumbwaiter::config
