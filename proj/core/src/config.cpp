#include "dumbwaiter/config.hpp"

#include <cmath>
#include <initializer_list>
#include <json.hpp>
#include <string>

#include "dumbwaiter/numfmt.hpp"

namespace dumbwaiter::config {

using nlohmann::json;

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& path, const std::string& message) {
  throw ConfigError(kind, path, message);
}

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(ErrorKind::kWrongType, path, "expected an object");
  return j;
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(ErrorKind::kUnknownField, join(path, key), "unknown field");
  }
}

const json& field(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::kMissingField, join(path, key), "missing field");
  return *it;
}

double as_real(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_decimal(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      fail(ErrorKind::kWrongType, path, "expected a decimal number");
    }
  }
  fail(ErrorKind::kWrongType, path, "expected a number");
}

long long as_integer(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(INT64_MAX)) fail(ErrorKind::kInvariantViolation, path, "too large");
    return static_cast<long long>(v);
  }
  if (j.is_number_integer()) return j.get<long long>();
  fail(ErrorKind::kWrongType, path, "expected an integer");
}

std::uint64_t as_u64(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v < 0) fail(ErrorKind::kInvariantViolation, path, "must be non-negative");
    return static_cast<std::uint64_t>(v);
  }
  fail(ErrorKind::kWrongType, path, "expected an unsigned integer");
}

std::size_t as_count(const json& j, const std::string& path, long long min_value) {
  const long long v = as_integer(j, path);
  if (v < min_value) {
    fail(ErrorKind::kInvariantViolation, path, "must be at least " + std::to_string(min_value));
  }
  return static_cast<std::size_t>(v);
}

std::vector<chain::MoveProbs> parse_rows(const json& j, const std::string& path) {
  if (!j.is_array()) fail(ErrorKind::kWrongType, path, "expected an array of [up, down, stay]");
  std::vector<chain::MoveProbs> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = index_path(path, i);
    const auto& r = j[i];
    if (!r.is_array() || r.size() != 3) fail(ErrorKind::kWrongType, p, "expected [up, down, stay]");
    rows.push_back({as_real(r[0], p + "[0]"), as_real(r[1], p + "[1]"), as_real(r[2], p + "[2]")});
  }
  return rows;
}

PolicyDescriptor parse_policy(const json& j, const std::string& path) {
  require_object(j, path);
  const auto& type = field(j, path, "type");
  if (!type.is_string()) fail(ErrorKind::kWrongType, join(path, "type"), "expected a string");
  PolicyDescriptor d;
  const auto t = type.get<std::string>();
  if (t == "uniform") {
    reject_unknown(j, path, {"type", "stay_prob"});
    d.kind = PolicyKind::kUniform;
    if (j.contains("stay_prob")) {
      const double s = as_real(j["stay_prob"], join(path, "stay_prob"));
      if (!(s >= 0.0 && s <= 1.0)) fail(ErrorKind::kInvariantViolation, join(path, "stay_prob"), "must lie in [0, 1]");
      d.stay_prob = s;
    }
  } else if (t == "explicit") {
    reject_unknown(j, path, {"type", "floors", "states"});
    const bool floors = j.contains("floors");
    const bool states = j.contains("states");
    if (floors == states) {
      fail(floors ? ErrorKind::kInvariantViolation : ErrorKind::kMissingField, path,
           "explicit policy needs exactly one of \"floors\" or \"states\"");
    }
    d.kind = floors ? PolicyKind::kPerFloor : PolicyKind::kPerState;
    d.rows = parse_rows(floors ? j["floors"] : j["states"], join(path, floors ? "floors" : "states"));
  } else {
    fail(ErrorKind::kInvariantViolation, join(path, "type"), "unknown policy type '" + t + "'");
  }
  return d;
}

ChainDocument parse_chain_payload(const json& j) {
  reject_unknown(j, "", {"schema_version", "kind", "floors", "call_probabilities", "policy",
                         "irreducibility_floor"});
  ChainDocument d;
  const long long floors = as_integer(field(j, "", "floors"), "floors");
  if (floors < 1 || floors > chain::kMaxFloors) {
    fail(ErrorKind::kInvariantViolation, "floors",
         "must lie in [1, " + std::to_string(chain::kMaxFloors) + "]");
  }
  d.floors = static_cast<int>(floors);

  const auto& probs = field(j, "", "call_probabilities");
  if (!probs.is_array()) fail(ErrorKind::kWrongType, "call_probabilities", "expected an array");
  d.call_probabilities.clear();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const auto p = index_path("call_probabilities", i);
    const double v = as_real(probs[i], p);
    if (!(v >= 0.0 && v < 1.0)) fail(ErrorKind::kInvariantViolation, p, "call probability must lie in [0, 1)");
    d.call_probabilities.push_back(v);
  }
  if (d.call_probabilities.size() != static_cast<std::size_t>(d.floors)) {
    fail(ErrorKind::kInvariantViolation, "call_probabilities", "need one probability per floor");
  }

  if (j.contains("irreducibility_floor")) {
    d.irreducibility_floor = as_real(j["irreducibility_floor"], "irreducibility_floor");
  }
  if (!(d.irreducibility_floor > 0.0 &&
        d.irreducibility_floor <= chain::max_irreducibility_floor(d.floors))) {
    fail(ErrorKind::kInvariantViolation, "irreducibility_floor", "infeasible for this building");
  }

  d.policy = parse_policy(field(j, "", "policy"), "policy");
  const std::string rows_path = d.policy.kind == PolicyKind::kPerFloor ? "policy.floors" : "policy.states";
  if (d.policy.kind == PolicyKind::kPerFloor && d.policy.rows.size() != static_cast<std::size_t>(d.floors)) {
    fail(ErrorKind::kInvariantViolation, rows_path, "need one row per floor");
  }
  if (d.policy.kind == PolicyKind::kPerState && d.policy.rows.size() != chain::state_count(d.floors)) {
    fail(ErrorKind::kInvariantViolation, rows_path,
         "need " + std::to_string(chain::state_count(d.floors)) + " rows");
  }
  const auto violations = d.policy.materialize(d.floors).violations(d.irreducibility_floor);
  if (!violations.empty()) fail(ErrorKind::kInvariantViolation, "policy", violations.front());
  return d;
}

optimize::GAConfig parse_ga_payload(const json& j) {
  reject_unknown(j, "", {"schema_version", "kind", "population_size", "generations",
                         "mutation_stddev", "crossover_rate", "elite_count", "tournament_size", "seed"});
  optimize::GAConfig ga;
  if (j.contains("population_size")) ga.population_size = as_count(j["population_size"], "population_size", 2);
  if (j.contains("generations")) ga.generations = as_count(j["generations"], "generations", 1);
  if (j.contains("mutation_stddev")) ga.mutation_stddev = as_real(j["mutation_stddev"], "mutation_stddev");
  if (j.contains("crossover_rate")) ga.crossover_rate = as_real(j["crossover_rate"], "crossover_rate");
  if (j.contains("elite_count")) ga.elite_count = as_count(j["elite_count"], "elite_count", 0);
  if (j.contains("tournament_size")) ga.tournament_size = as_count(j["tournament_size"], "tournament_size", 1);
  if (j.contains("seed")) ga.seed = as_u64(j["seed"], "seed");
  if (!(ga.mutation_stddev > 0.0) || !std::isfinite(ga.mutation_stddev)) {
    fail(ErrorKind::kInvariantViolation, "mutation_stddev", "must be positive");
  }
  if (!(ga.crossover_rate >= 0.0 && ga.crossover_rate <= 1.0)) {
    fail(ErrorKind::kInvariantViolation, "crossover_rate", "must lie in [0, 1]");
  }
  if (ga.elite_count >= ga.population_size) {
    fail(ErrorKind::kInvariantViolation, "elite_count", "must be smaller than population_size");
  }
  return ga;
}

fleet::FleetSpec parse_fleet_payload(const json& j) {
  reject_unknown(j, "", {"schema_version", "kind", "elevators", "capacity", "passengers"});
  fleet::FleetSpec f;
  const long long m = as_integer(field(j, "", "elevators"), "elevators");
  const long long n = as_integer(field(j, "", "capacity"), "capacity");
  f.passengers = as_integer(field(j, "", "passengers"), "passengers");
  if (m < 1 || m > INT32_MAX) fail(ErrorKind::kInvariantViolation, "elevators", "must be at least 1");
  if (n < 1 || n > INT32_MAX) fail(ErrorKind::kInvariantViolation, "capacity", "must be at least 1");
  if (f.passengers < 0) fail(ErrorKind::kInvariantViolation, "passengers", "cannot be negative");
  f.elevators = static_cast<int>(m);
  f.capacity = static_cast<int>(n);
  return f;
}

spatial::BuildingSpec parse_building_payload(const json& j) {
  reject_unknown(j, "", {"schema_version", "kind", "floors", "floor_height_m", "elevator_speed_m_per_min"});
  spatial::BuildingSpec b;
  const long long floors = as_integer(field(j, "", "floors"), "floors");
  if (floors < 1 || floors > INT32_MAX) fail(ErrorKind::kInvariantViolation, "floors", "must be positive");
  b.floors = static_cast<int>(floors);
  b.floor_height_m = as_real(field(j, "", "floor_height_m"), "floor_height_m");
  b.elevator_speed_m_per_min = as_real(field(j, "", "elevator_speed_m_per_min"), "elevator_speed_m_per_min");
  if (!(b.floor_height_m > 0.0) || !std::isfinite(b.floor_height_m)) {
    fail(ErrorKind::kInvariantViolation, "floor_height_m", "must be positive");
  }
  if (!(b.elevator_speed_m_per_min > 0.0) || !std::isfinite(b.elevator_speed_m_per_min)) {
    fail(ErrorKind::kInvariantViolation, "elevator_speed_m_per_min", "must be positive");
  }
  return b;
}

std::string infer_kind(const json& j) {
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) fail(ErrorKind::kWrongType, "kind", "expected a string");
    return j["kind"].get<std::string>();
  }
  if (j.contains("call_probabilities")) return "chain";
  if (j.contains("elevators")) return "fleet";
  if (j.contains("floor_height_m")) return "building";
  if (j.contains("population_size") || j.contains("generations")) return "ga";
  fail(ErrorKind::kMissingField, "kind", "cannot tell what kind of document this is");
}

json rows_json(const std::vector<chain::MoveProbs>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(json::array({r.up, r.down, r.stay}));
  return out;
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kSyntax: return "syntax";
    case ErrorKind::kUnknownField: return "unknown-field";
    case ErrorKind::kMissingField: return "missing-field";
    case ErrorKind::kWrongType: return "wrong-type";
    case ErrorKind::kInvariantViolation: return "invariant-violation";
    case ErrorKind::kUnsupportedVersion: return "unsupported-version";
  }
  return "unknown";
}

ConfigError::ConfigError(ErrorKind kind, std::string path, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + (path.empty() ? "" : " at " + path) + ": " + message),
      kind_(kind),
      path_(std::move(path)) {}

chain::MovementPolicy PolicyDescriptor::materialize(int floors) const {
  switch (kind) {
    case PolicyKind::kUniform:
      return stay_prob ? chain::MovementPolicy::uniform_with_stay(floors, *stay_prob)
                       : chain::MovementPolicy::uniform(floors);
    case PolicyKind::kPerFloor:
      if (rows.size() != static_cast<std::size_t>(floors)) {
        throw std::invalid_argument("policy needs one row per floor");
      }
      return chain::MovementPolicy::per_floor(rows);
    case PolicyKind::kPerState:
      return chain::MovementPolicy::per_state(floors, rows);
  }
  throw std::invalid_argument("unknown policy kind");
}

chain::ChainSpec ChainDocument::to_spec() const {
  chain::ChainSpec spec;
  spec.floors = floors;
  spec.call_probabilities = call_probabilities;
  spec.policy = policy.materialize(floors);
  spec.irreducibility_floor = irreducibility_floor;
  spec.validate();
  return spec;
}

CanonicalDocument parse(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kSyntax, "", e.what());
  }
  require_object(j, "");
  const auto& version = field(j, "", "schema_version");
  if (!version.is_number_integer() || version.get<long long>() != 1) {
    fail(ErrorKind::kUnsupportedVersion, "schema_version", "schema_version must be 1");
  }

  CanonicalDocument doc;
  const auto kind = infer_kind(j);
  if (kind == "chain") {
    doc.payload = parse_chain_payload(j);
  } else if (kind == "ga") {
    doc.payload = parse_ga_payload(j);
  } else if (kind == "fleet") {
    doc.payload = parse_fleet_payload(j);
  } else if (kind == "building") {
    doc.payload = parse_building_payload(j);
  } else {
    fail(ErrorKind::kInvariantViolation, "kind", "unknown document kind '" + kind + "'");
  }
  return doc;
}

std::string emit(const CanonicalDocument& document) {
  json j;
  j["schema_version"] = document.schema_version;
  std::visit(
      [&j](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ChainDocument>) {
          j["kind"] = "chain";
          j["floors"] = p.floors;
          j["call_probabilities"] = p.call_probabilities;
          j["irreducibility_floor"] = p.irreducibility_floor;
          json pol;
          switch (p.policy.kind) {
            case PolicyKind::kUniform:
              pol["type"] = "uniform";
              if (p.policy.stay_prob) pol["stay_prob"] = *p.policy.stay_prob;
              break;
            case PolicyKind::kPerFloor:
              pol["type"] = "explicit";
              pol["floors"] = rows_json(p.policy.rows);
              break;
            case PolicyKind::kPerState:
              pol["type"] = "explicit";
              pol["states"] = rows_json(p.policy.rows);
              break;
          }
          j["policy"] = std::move(pol);
        } else if constexpr (std::is_same_v<T, optimize::GAConfig>) {
          j["kind"] = "ga";
          j["population_size"] = p.population_size;
          j["generations"] = p.generations;
          j["mutation_stddev"] = p.mutation_stddev;
          j["crossover_rate"] = p.crossover_rate;
          j["elite_count"] = p.elite_count;
          j["tournament_size"] = p.tournament_size;
          j["seed"] = p.seed;
        } else if constexpr (std::is_same_v<T, fleet::FleetSpec>) {
          j["kind"] = "fleet";
          j["elevators"] = p.elevators;
          j["capacity"] = p.capacity;
          j["passengers"] = p.passengers;
        } else {
          j["kind"] = "building";
          j["floors"] = p.floors;
          j["floor_height_m"] = p.floor_height_m;
          j["elevator_speed_m_per_min"] = p.elevator_speed_m_per_min;
        }
      },
      document.payload);
  return j.dump(2) + "\n";
}

ChainDocument parse_chain(std::string_view bytes) {
  auto doc = parse(bytes);
  if (auto* c = std::get_if<ChainDocument>(&doc.payload)) return std::move(*c);
  fail(ErrorKind::kWrongType, "kind", "expected a chain document");
}

optimize::GAConfig parse_ga(std::string_view bytes) {
  auto doc = parse(bytes);
  if (auto* g = std::get_if<optimize::GAConfig>(&doc.payload)) return *g;
  fail(ErrorKind::kWrongType, "kind", "expected a ga document");
}

}  // namespace dumbwaiter::config
