#pragma once

#include <cstdint>
#include <random>

namespace dumbwaiter {

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard for a given seed, so streams are bit-identical across hosts and
/// standard libraries. Doubles are produced from the top 53 bits of each draw
/// (never through std::uniform_real_distribution, whose algorithm is
/// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller, consuming two draws per call.
  double normal();

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer applied to (master, stream). Used to derive per-replicate
/// sub-seeds so results never depend on execution order or thread count.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace dumbwaiter
