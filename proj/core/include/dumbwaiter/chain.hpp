#pragma once

// Discrete-time elevator chain over composite states (c, w): the elevator
// floor c in [1, N] and the bitmask w of floors with a pending call.
//
// One step from (c, w):
//   1. the elevator moves down / stays / moves up per the policy row of (c, w);
//   2. the arrival floor c' has its call cleared;
//   3. every other floor j with no pending call gains one with probability p_j,
//      independently.
// This keeps w_c = 0 invariant, so states with w_c = 1 are never stored.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dumbwaiter::chain {

inline constexpr int kMaxFloors = 20;
inline constexpr double kDefaultIrreducibilityFloor = 1e-3;

/// Elevator floor (1-based) plus the waiting bitmask. Bit j-1 is floor j.
struct CompositeState {
  int floor = 1;
  std::uint32_t waiting = 0;

  bool waiting_on(int f) const noexcept { return (waiting >> (f - 1)) & 1U; }
  auto operator<=>(const CompositeState&) const = default;
};

/// Empty-building state (floor, 0...0).
constexpr CompositeState empty_state(int floor) noexcept { return {floor, 0}; }

/// "c:w_1...w_N", e.g. "2:100" is the elevator on floor 2 with a call on floor 1.
std::string to_string(const CompositeState& s, int n_floors);
/// Inverse of to_string. Throws std::invalid_argument.
CompositeState parse_state(std::string_view text, int n_floors);

class ResourceLimitError : public std::length_error {
 public:
  ResourceLimitError(int n_floors, std::uint64_t state_count);
  std::uint64_t state_count() const noexcept { return state_count_; }

 private:
  std::uint64_t state_count_;
};

class UnreachableTargetError : public std::runtime_error {
 public:
  UnreachableTargetError(const std::string& start_label, const std::string& target_label);
  const std::string& start() const noexcept { return start_; }

 private:
  std::string start_;
};

/// N * 2^(N-1). Does not check the ceiling.
std::uint64_t state_count(int n_floors);

/// All states with w_c = 0, floor-major then ascending w.
/// Throws std::invalid_argument for N < 1 and ResourceLimitError above kMaxFloors.
std::vector<CompositeState> enumerate_states(int n_floors);

/// Position of `s` in enumerate_states(n_floors). Throws std::invalid_argument
/// if `s` is not a valid state for that building.
std::size_t state_index(int n_floors, const CompositeState& s);

struct MoveProbs {
  double up = 0.0;
  double down = 0.0;
  double stay = 1.0;

  bool operator==(const MoveProbs&) const = default;
};

/// Per-state movement probabilities, indexed like enumerate_states().
class MovementPolicy {
 public:
  MovementPolicy() = default;

  /// Equal probability over the moves allowed at each floor.
  static MovementPolicy uniform(int n_floors);
  /// Stay probability `stay` everywhere; the rest is split evenly over the
  /// allowed directions.
  static MovementPolicy uniform_with_stay(int n_floors, double stay);
  /// Row per floor, applied regardless of the waiting mask.
  static MovementPolicy per_floor(std::vector<MoveProbs> floors);
  /// One row per composite state in enumeration order.
  static MovementPolicy per_state(int n_floors, std::vector<MoveProbs> rows);

  int n_floors() const noexcept { return n_floors_; }
  std::span<const MoveProbs> rows() const noexcept { return rows_; }
  const MoveProbs& at(std::size_t index) const { return rows_.at(index); }
  const MoveProbs& at(const CompositeState& s) const;

  /// Human-readable list of broken invariants (simplex within 1e-12,
  /// reflective boundaries, connected-floor moves >= irreducibility_floor).
  std::vector<std::string> violations(double irreducibility_floor) const;
  /// Throws std::invalid_argument naming the first violation.
  void validate(double irreducibility_floor) const;

  bool operator==(const MovementPolicy&) const = default;

 private:
  MovementPolicy(int n_floors, std::vector<MoveProbs> rows)
      : n_floors_(n_floors), rows_(std::move(rows)) {}

  int n_floors_ = 0;
  std::vector<MoveProbs> rows_;
};

struct ChainSpec {
  int floors = 1;
  std::vector<double> call_probabilities;
  MovementPolicy policy;
  double irreducibility_floor = kDefaultIrreducibilityFloor;

  /// Throws std::invalid_argument.
  void validate() const;

  bool operator==(const ChainSpec&) const = default;
};

/// Largest irreducibility floor a building of `n_floors` can honour.
double max_irreducibility_floor(int n_floors) noexcept;

struct Entry {
  std::uint32_t col = 0;
  double prob = 0.0;

  bool operator==(const Entry&) const = default;
};

/// Sparse row-stochastic kernel over composite states (CSR layout).
class TransitionMatrix {
 public:
  /// Checks only structure: one row per state and column indices in range.
  /// Stochasticity is the business of validate_chain().
  TransitionMatrix(int n_floors, const std::vector<std::vector<Entry>>& rows);

  int n_floors() const noexcept { return n_floors_; }
  std::size_t dimension() const noexcept { return states_.size(); }
  const std::vector<CompositeState>& states() const noexcept { return states_; }
  std::size_t index_of(const CompositeState& s) const { return state_index(n_floors_, s); }

  std::span<const Entry> row(std::size_t i) const;
  /// Dense lookup; 0 if absent.
  double at(std::size_t i, std::size_t j) const;
  std::size_t nonzeros() const noexcept { return entries_.size(); }

  bool operator==(const TransitionMatrix&) const = default;

 private:
  int n_floors_;
  std::vector<CompositeState> states_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

/// Throws std::invalid_argument if the spec breaks its invariants.
TransitionMatrix build_transition_matrix(const ChainSpec& spec);

struct ValidationReport {
  std::vector<std::size_t> row_sum_violations;
  std::vector<std::pair<std::size_t, std::size_t>> negative_entries;
  /// Rows with mass on a floor that is not the current or an adjacent one.
  std::vector<std::size_t> boundary_violations;
  /// Rows with no mass toward some connected floor.
  std::vector<std::size_t> movement_violations;
  std::size_t closed_classes = 0;
  std::size_t transient_states = 0;
  /// Exactly one closed communicating class, i.e. a unique stationary law.
  bool irreducible = false;

  bool ok() const noexcept {
    return row_sum_violations.empty() && negative_entries.empty() &&
           boundary_violations.empty() && movement_violations.empty() && irreducible;
  }
};

ValidationReport validate_chain(const TransitionMatrix& matrix, double row_tolerance = 1e-10);

/// Expected steps to reach `target` from every state; +infinity where the
/// target is not reached almost surely. Direct sparse LU solve with
/// iterative refinement until max residual <= 1e-9 * max(1, max h).
std::vector<double> hitting_times_to(const TransitionMatrix& matrix, std::size_t target);

/// Expected first hitting times of `target` from each start, in input order.
/// Throws UnreachableTargetError naming the first start with an infinite value.
std::vector<double> expected_first_hitting_times(const TransitionMatrix& matrix,
                                                 const CompositeState& target,
                                                 std::span<const CompositeState> starts);

struct HittingTimeReport {
  /// per_target[i-1]: E[tau_i], averaged over the start states.
  std::vector<double> per_target;
  /// from_start[i-1][j-1]: E[tau_i] from the empty state on floor j.
  /// Empty when a custom start was used.
  std::vector<std::vector<double>> from_start;
  double objective = 0.0;
};

/// Sum over floors i of E[tau_i], the hitting time of (i, 0...0).
/// Default start convention: average over (j, 0...0) for j != i (0 for N = 1).
/// With `start`, every tau_i is measured from that single state instead.
HittingTimeReport objective(const TransitionMatrix& matrix,
                            std::optional<CompositeState> start = std::nullopt);
HittingTimeReport objective(const ChainSpec& spec,
                            std::optional<CompositeState> start = std::nullopt);

/// `steps` transitions sampled from the rows. Result has steps + 1 states.
std::vector<CompositeState> simulate_chain(const TransitionMatrix& matrix,
                                           const CompositeState& start,
                                           std::size_t steps, std::uint64_t seed);

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t episodes = 0;
};

/// Monte Carlo hitting time. Each episode draws its start uniformly from
/// `starts` with its own seed derive_seed(seed, episode), so the estimate is
/// independent of scheduling. Throws std::runtime_error if an episode exceeds
/// max_steps.
McEstimate monte_carlo_hitting_time(const TransitionMatrix& matrix,
                                    const CompositeState& target,
                                    std::span<const CompositeState> starts,
                                    std::size_t episodes, std::uint64_t seed,
                                    std::uint64_t max_steps = 100'000'000);

/// Monte Carlo counterpart of objective() under the default start convention.
/// Target i uses stream derive_seed(seed, i).
std::vector<McEstimate> monte_carlo_objective(const TransitionMatrix& matrix,
                                              std::size_t episodes, std::uint64_t seed);

}  // namespace dumbwaiter::chain
