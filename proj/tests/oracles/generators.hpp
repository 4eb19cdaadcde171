#pragma once

// Hand-rolled generators for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "dumbwaiter/chain.hpp"

namespace gen {

using dumbwaiter::chain::ChainSpec;
using dumbwaiter::chain::MoveProbs;
using dumbwaiter::chain::MovementPolicy;

class Source {
 public:
  explicit Source(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Random row over the moves allowed at `floor`, each weight in [0.05, 1).
inline MoveProbs random_row(Source& src, int floor, int n) {
  if (n == 1) return {0.0, 0.0, 1.0};
  const bool can_up = floor < n;
  const bool can_down = floor > 1;
  double up = can_up ? src.uniform(0.05, 1.0) : 0.0;
  double down = can_down ? src.uniform(0.05, 1.0) : 0.0;
  double stay = src.uniform(0.05, 1.0);
  const double total = up + down + stay;
  up /= total;
  down /= total;
  stay = 1.0 - up - down;
  return {up, down, stay};
}

/// Per-state policy, so that movement depends on the waiting mask as well.
inline MovementPolicy random_policy(Source& src, int n) {
  std::vector<MoveProbs> rows;
  for (const auto& s : dumbwaiter::chain::enumerate_states(n)) {
    rows.push_back(random_row(src, s.floor, n));
  }
  return MovementPolicy::per_state(n, std::move(rows));
}

inline ChainSpec random_spec(Source& src, int n, double p_max) {
  ChainSpec spec;
  spec.floors = n;
  for (int i = 0; i < n; ++i) spec.call_probabilities.push_back(src.uniform(0.0, p_max));
  spec.policy = random_policy(src, n);
  return spec;
}

inline ChainSpec uniform_spec(int n, double p) {
  ChainSpec spec;
  spec.floors = n;
  spec.call_probabilities.assign(static_cast<std::size_t>(n), p);
  spec.policy = MovementPolicy::uniform(n);
  return spec;
}

}  // namespace gen
