#include "dumbwaiter/fleet.hpp"

#include <string>

#include "dumbwaiter/rng.hpp"

namespace dumbwaiter::fleet {

void FleetSpec::validate() const {
  if (elevators < 1) throw std::invalid_argument("need at least one elevator");
  if (capacity < 1) throw std::invalid_argument("elevator capacity must be at least 1");
  if (passengers < 0) throw std::invalid_argument("passenger count cannot be negative");
}

InfeasibleFleetError::InfeasibleFleetError(const FleetSpec& spec)
    : std::runtime_error("infeasible fleet: " + std::to_string(spec.passengers) +
                         " passengers exceed m * n = " + std::to_string(spec.elevators) + " * " +
                         std::to_string(spec.capacity) + " = " +
                         std::to_string(static_cast<long long>(spec.elevators) * spec.capacity)) {}

FleetAssignment distribute(const FleetSpec& spec) {
  spec.validate();
  const long long m = spec.elevators;
  const long long base = spec.passengers / m;
  const long long extra = spec.passengers % m;
  FleetAssignment out;
  out.counts.assign(static_cast<std::size_t>(m), base);
  for (long long i = 0; i < extra; ++i) ++out.counts[static_cast<std::size_t>(i)];
  const long long largest = base + (extra > 0 ? 1 : 0);
  out.feasible = largest <= spec.capacity;
  return out;
}

std::uint64_t elevator_seed(std::uint64_t seed, std::size_t index) {
  return derive_seed(seed, index);
}

FleetMetrics fleet_simulation(const FleetSpec& spec, std::size_t legs_per_elevator,
                              std::uint64_t seed) {
  FleetMetrics out;
  out.assignment = distribute(spec);
  if (!out.assignment.feasible) throw InfeasibleFleetError(spec);
  if (legs_per_elevator < 3) throw std::invalid_argument("need at least 3 legs per elevator");

  // Pass one: per-car statistics and the pooled mean. Pass two regenerates
  // each stream (same seed, same legs) for the centred pooled sums.
  const auto cars = static_cast<std::size_t>(spec.elevators);
  for (std::size_t i = 0; i < cars; ++i) {
    ElevatorRun run;
    run.seed = elevator_seed(seed, i);
    const auto legs = spatial::leg_series(spatial::generate_calls(legs_per_elevator, run.seed));
    run.moments = spatial::empirical_leg_moments(legs);
    run.total_distance = spatial::total_distance(legs);
    out.total_distance += run.total_distance;
    out.elevators.push_back(run);
  }
  if (cars == 1) {
    out.pooled = out.elevators.front().moments;
    return out;
  }
  spatial::CenteredLegSums sums(out.total_distance /
                                static_cast<double>(cars * legs_per_elevator));
  for (const auto& run : out.elevators) {
    sums.add(spatial::leg_series(spatial::generate_calls(legs_per_elevator, run.seed)));
  }
  out.pooled = sums.finish();
  return out;
}

}  // namespace dumbwaiter::fleet
