#pragma once

// Multi-elevator load split: m elevators of capacity n share A passengers as
// evenly as possible, after which each car runs as its own dumbwaiter.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dumbwaiter/spatial.hpp"

namespace dumbwaiter::fleet {

struct FleetSpec {
  int elevators = 1;       // m
  int capacity = 1;        // n
  long long passengers = 0;  // A

  /// Throws std::invalid_argument unless m >= 1, n >= 1, A >= 0.
  void validate() const;

  bool operator==(const FleetSpec&) const = default;
};

struct FleetAssignment {
  std::vector<long long> counts;
  bool feasible = false;
};

class InfeasibleFleetError : public std::runtime_error {
 public:
  explicit InfeasibleFleetError(const FleetSpec& spec);
};

/// ceil(A/m) for the first A mod m cars, floor(A/m) for the rest;
/// feasible iff ceil(A/m) <= n, equivalently A <= m * n.
FleetAssignment distribute(const FleetSpec& spec);

struct ElevatorRun {
  std::uint64_t seed = 0;
  spatial::LegMoments moments;
  double total_distance = 0.0;
};

struct FleetMetrics {
  FleetAssignment assignment;
  std::vector<ElevatorRun> elevators;
  spatial::LegMoments pooled;
  double total_distance = 0.0;
};

/// Seed of elevator `index` in a fleet run seeded with `seed`.
std::uint64_t elevator_seed(std::uint64_t seed, std::size_t index);

/// One independent spatial run per elevator with elevator_seed(seed, i).
/// Throws InfeasibleFleetError when the load cannot be split, and
/// std::invalid_argument when legs_per_elevator < 3.
FleetMetrics fleet_simulation(const FleetSpec& spec, std::size_t legs_per_elevator,
                              std::uint64_t seed);

}  // namespace dumbwaiter::fleet
