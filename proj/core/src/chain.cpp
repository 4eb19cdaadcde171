#include "dumbwaiter/chain.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <deque>

#include "dumbwaiter/rng.hpp"

namespace dumbwaiter::chain {

namespace {

constexpr double kSimplexTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-9;
constexpr int kMaxRefinements = 5;

std::uint32_t bit(int floor) { return 1U << (floor - 1); }

std::uint32_t low_mask(int bits) { return bits <= 0 ? 0U : ((1U << bits) - 1U); }

void check_floor_count(int n_floors) {
  if (n_floors < 1) throw std::invalid_argument("building needs at least one floor");
  if (n_floors > kMaxFloors) throw ResourceLimitError(n_floors, state_count(n_floors));
}

// Walks a TransitionMatrix by inverse-CDF sampling on precomputed
// cumulative rows.
class RowSampler {
 public:
  explicit RowSampler(const TransitionMatrix& m) : offsets_{0} {
    offsets_.reserve(m.dimension() + 1);
    for (std::size_t i = 0; i < m.dimension(); ++i) {
      double acc = 0.0;
      for (const auto& e : m.row(i)) {
        if (e.prob <= 0.0) continue;
        acc += e.prob;
        cumulative_.push_back(acc);
        cols_.push_back(e.col);
      }
      offsets_.push_back(cumulative_.size());
    }
  }

  std::size_t step(std::size_t from, Rng& rng) const {
    const auto begin = cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[from]);
    const auto end = cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[from + 1]);
    if (begin == end) return from;
    const double u = rng.uniform01() * *(end - 1);
    auto it = std::upper_bound(begin, end, u);
    if (it == end) --it;
    return cols_[static_cast<std::size_t>(it - cumulative_.begin())];
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<double> cumulative_;
  std::vector<std::uint32_t> cols_;
};

// Reverse adjacency over positive entries.
std::vector<std::vector<std::uint32_t>> predecessors(const TransitionMatrix& m) {
  std::vector<std::vector<std::uint32_t>> pred(m.dimension());
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    for (const auto& e : m.row(i)) {
      if (e.prob > 0.0) pred[e.col].push_back(static_cast<std::uint32_t>(i));
    }
  }
  return pred;
}

// Tarjan's SCC, iterative. Returns component id per vertex.
std::vector<std::size_t> strongly_connected_components(const TransitionMatrix& m,
                                                       std::size_t& n_components) {
  const std::size_t n = m.dimension();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next edge)
  std::size_t counter = 0;
  n_components = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      const auto row = m.row(v);
      bool descended = false;
      while (edge < row.size()) {
        const auto& e = row[edge++];
        if (e.prob <= 0.0) continue;
        const std::size_t w = e.col;
        if (index[w] == kUnset) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = n_components;
        } while (w != v);
        ++n_components;
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        auto& parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

std::string to_string(const CompositeState& s, int n_floors) {
  std::string out = std::to_string(s.floor) + ":";
  for (int f = 1; f <= n_floors; ++f) out.push_back(s.waiting_on(f) ? '1' : '0');
  return out;
}

CompositeState parse_state(std::string_view text, int n_floors) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw std::invalid_argument("state must look like FLOOR:BITS, got '" + std::string(text) + "'");
  }
  CompositeState s;
  s.floor = 0;
  for (char ch : text.substr(0, colon)) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("bad floor in state");
    s.floor = s.floor * 10 + (ch - '0');
    if (s.floor > kMaxFloors) throw std::invalid_argument("floor out of range");
  }
  const auto bits = text.substr(colon + 1);
  if (static_cast<int>(bits.size()) != n_floors) {
    throw std::invalid_argument("state needs exactly " + std::to_string(n_floors) + " waiting bits");
  }
  for (int f = 1; f <= n_floors; ++f) {
    const char ch = bits[static_cast<std::size_t>(f - 1)];
    if (ch == '1') {
      s.waiting |= bit(f);
    } else if (ch != '0') {
      throw std::invalid_argument("waiting bits must be 0 or 1");
    }
  }
  state_index(n_floors, s);
  return s;
}

ResourceLimitError::ResourceLimitError(int n_floors, std::uint64_t state_count)
    : std::length_error(std::to_string(n_floors) + " floors would need " +
                        std::to_string(state_count) + " states (ceiling is " +
                        std::to_string(kMaxFloors) + " floors)"),
      state_count_(state_count) {}

UnreachableTargetError::UnreachableTargetError(const std::string& start_label,
                                               const std::string& target_label)
    : std::runtime_error("target " + target_label + " is not reached almost surely from start " +
                         start_label),
      start_(start_label) {}

std::uint64_t state_count(int n_floors) {
  if (n_floors < 1) return 0;
  return static_cast<std::uint64_t>(n_floors) << (n_floors - 1);
}

std::vector<CompositeState> enumerate_states(int n_floors) {
  check_floor_count(n_floors);
  const std::uint32_t per_floor = 1U << (n_floors - 1);
  std::vector<CompositeState> out;
  out.reserve(state_count(n_floors));
  for (int c = 1; c <= n_floors; ++c) {
    for (std::uint32_t k = 0; k < per_floor; ++k) {
      const std::uint32_t low = k & low_mask(c - 1);
      const std::uint32_t high = k >> (c - 1);
      out.push_back({c, low | (high << c)});
    }
  }
  return out;
}

std::size_t state_index(int n_floors, const CompositeState& s) {
  if (n_floors < 1 || n_floors > kMaxFloors || s.floor < 1 || s.floor > n_floors ||
      (s.waiting >> n_floors) != 0 || s.waiting_on(s.floor)) {
    throw std::invalid_argument("state " + to_string(s, std::clamp(n_floors, 1, kMaxFloors)) +
                                " is not valid for " + std::to_string(n_floors) + " floors");
  }
  const std::uint32_t low = s.waiting & low_mask(s.floor - 1);
  const std::uint32_t high = s.waiting >> s.floor;
  const std::size_t compressed = low | (high << (s.floor - 1));
  return (static_cast<std::size_t>(s.floor - 1) << (n_floors - 1)) + compressed;
}

// --- MovementPolicy --------------------------------------------------------

MovementPolicy MovementPolicy::uniform(int n_floors) {
  check_floor_count(n_floors);
  std::vector<MoveProbs> floors(static_cast<std::size_t>(n_floors));
  for (int c = 1; c <= n_floors; ++c) {
    auto& m = floors[static_cast<std::size_t>(c - 1)];
    const bool can_up = c < n_floors;
    const bool can_down = c > 1;
    const double share = 1.0 / (1.0 + can_up + can_down);
    m.up = can_up ? share : 0.0;
    m.down = can_down ? share : 0.0;
    m.stay = share;
  }
  return per_floor(std::move(floors));
}

MovementPolicy MovementPolicy::uniform_with_stay(int n_floors, double stay) {
  check_floor_count(n_floors);
  if (!(stay >= 0.0 && stay <= 1.0)) throw std::invalid_argument("stay probability outside [0, 1]");
  std::vector<MoveProbs> floors(static_cast<std::size_t>(n_floors));
  for (int c = 1; c <= n_floors; ++c) {
    auto& m = floors[static_cast<std::size_t>(c - 1)];
    const bool can_up = c < n_floors;
    const bool can_down = c > 1;
    const int directions = can_up + can_down;
    m.stay = directions == 0 ? 1.0 : stay;
    const double move = directions == 0 ? 0.0 : (1.0 - stay) / directions;
    m.up = can_up ? move : 0.0;
    m.down = can_down ? move : 0.0;
  }
  return per_floor(std::move(floors));
}

MovementPolicy MovementPolicy::per_floor(std::vector<MoveProbs> floors) {
  const int n = static_cast<int>(floors.size());
  check_floor_count(n);
  const std::size_t per = std::size_t{1} << (n - 1);
  std::vector<MoveProbs> rows;
  rows.reserve(per * floors.size());
  for (const auto& f : floors) rows.insert(rows.end(), per, f);
  return MovementPolicy(n, std::move(rows));
}

MovementPolicy MovementPolicy::per_state(int n_floors, std::vector<MoveProbs> rows) {
  check_floor_count(n_floors);
  if (rows.size() != state_count(n_floors)) {
    throw std::invalid_argument("policy needs " + std::to_string(state_count(n_floors)) +
                                " rows, got " + std::to_string(rows.size()));
  }
  return MovementPolicy(n_floors, std::move(rows));
}

const MoveProbs& MovementPolicy::at(const CompositeState& s) const {
  return rows_.at(state_index(n_floors_, s));
}

std::vector<std::string> MovementPolicy::violations(double eps) const {
  std::vector<std::string> out;
  if (n_floors_ < 1) {
    out.emplace_back("policy is empty");
    return out;
  }
  const std::size_t per = std::size_t{1} << (n_floors_ - 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& m = rows_[i];
    const int c = static_cast<int>(i / per) + 1;
    const auto where = [&] {
      const std::uint32_t k = static_cast<std::uint32_t>(i % per);
      const CompositeState s{c, (k & low_mask(c - 1)) | ((k >> (c - 1)) << c)};
      return "state " + to_string(s, n_floors_) + ": ";
    };
    if (!(m.up >= 0.0 && m.up <= 1.0 && m.down >= 0.0 && m.down <= 1.0 && m.stay >= 0.0 &&
          m.stay <= 1.0)) {
      out.push_back(where() + "probability outside [0, 1]");
      continue;
    }
    if (std::abs(m.up + m.down + m.stay - 1.0) > kSimplexTolerance) {
      out.push_back(where() + "up + down + stay != 1");
    }
    if (c == 1 && m.down != 0.0) out.push_back(where() + "cannot move below floor 1");
    if (c == n_floors_ && m.up != 0.0) out.push_back(where() + "cannot move above the top floor");
    if (c < n_floors_ && m.up < eps) out.push_back(where() + "up probability below the irreducibility floor");
    if (c > 1 && m.down < eps) out.push_back(where() + "down probability below the irreducibility floor");
  }
  return out;
}

void MovementPolicy::validate(double eps) const {
  const auto v = violations(eps);
  if (!v.empty()) throw std::invalid_argument(v.front());
}

double max_irreducibility_floor(int n_floors) noexcept { return n_floors >= 3 ? 0.5 : 1.0; }

void ChainSpec::validate() const {
  check_floor_count(floors);
  if (call_probabilities.size() != static_cast<std::size_t>(floors)) {
    throw std::invalid_argument("need one call probability per floor");
  }
  for (std::size_t i = 0; i < call_probabilities.size(); ++i) {
    const double p = call_probabilities[i];
    if (!(p >= 0.0 && p < 1.0)) {
      throw std::invalid_argument("call_probabilities[" + std::to_string(i) + "] must lie in [0, 1)");
    }
  }
  if (!(irreducibility_floor > 0.0 && irreducibility_floor <= max_irreducibility_floor(floors))) {
    throw std::invalid_argument("irreducibility floor must lie in (0, " +
                                std::to_string(max_irreducibility_floor(floors)) + "] for " +
                                std::to_string(floors) + " floors");
  }
  if (policy.n_floors() != floors) throw std::invalid_argument("policy floor count mismatch");
  policy.validate(irreducibility_floor);
}

// --- TransitionMatrix ------------------------------------------------------

TransitionMatrix::TransitionMatrix(int n_floors, const std::vector<std::vector<Entry>>& rows)
    : n_floors_(n_floors), states_(enumerate_states(n_floors)) {
  if (rows.size() != states_.size()) {
    throw std::invalid_argument("matrix needs " + std::to_string(states_.size()) + " rows, got " +
                                std::to_string(rows.size()));
  }
  offsets_.reserve(rows.size() + 1);
  offsets_.push_back(0);
  for (const auto& r : rows) {
    for (const auto& e : r) {
      if (e.col >= states_.size()) throw std::invalid_argument("column index out of range");
      entries_.push_back(e);
    }
    offsets_.push_back(entries_.size());
  }
}

std::span<const Entry> TransitionMatrix::row(std::size_t i) const {
  return std::span<const Entry>(entries_).subspan(offsets_.at(i), offsets_.at(i + 1) - offsets_[i]);
}

double TransitionMatrix::at(std::size_t i, std::size_t j) const {
  double sum = 0.0;
  for (const auto& e : row(i)) {
    if (e.col == j) sum += e.prob;
  }
  return sum;
}

TransitionMatrix build_transition_matrix(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.floors;
  const auto states = enumerate_states(n);
  const auto& p = spec.call_probabilities;
  std::vector<std::vector<Entry>> rows(states.size());

  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    const auto& move = spec.policy.at(i);
    auto& row = rows[i];
    const std::pair<int, double> moves[] = {{-1, move.down}, {0, move.stay}, {1, move.up}};
    for (const auto& [dir, move_prob] : moves) {
      if (move_prob <= 0.0) continue;
      const int arrival = s.floor + dir;
      const std::uint32_t cleared = s.waiting & ~bit(arrival);
      // Floors that may ring this step; p_j = 0 floors never do.
      std::uint32_t eligible = 0;
      for (int j = 1; j <= n; ++j) {
        if (j == arrival || (cleared & bit(j))) continue;
        if (p[static_cast<std::size_t>(j - 1)] > 0.0) eligible |= bit(j);
      }
      for (std::uint32_t sub = eligible;; sub = (sub - 1) & eligible) {
        double prob = move_prob;
        for (int j = 1; j <= n; ++j) {
          if (!(eligible & bit(j))) continue;
          const double pj = p[static_cast<std::size_t>(j - 1)];
          prob *= (sub & bit(j)) ? pj : 1.0 - pj;
        }
        if (prob > 0.0) {
          const auto col = state_index(n, {arrival, cleared | sub});
          row.push_back({static_cast<std::uint32_t>(col), prob});
        }
        if (sub == 0) break;
      }
    }
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  }
  return TransitionMatrix(n, rows);
}

ValidationReport validate_chain(const TransitionMatrix& m, double row_tolerance) {
  ValidationReport report;
  const int n = m.n_floors();
  const auto& states = m.states();
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    double sum = 0.0, up = 0.0, down = 0.0;
    bool jumped = false;
    for (const auto& e : m.row(i)) {
      sum += e.prob;
      if (e.prob < 0.0) report.negative_entries.push_back({i, e.col});
      const int delta = states[e.col].floor - states[i].floor;
      if (e.prob > 0.0) {
        if (delta > 1 || delta < -1) jumped = true;
        if (delta == 1) up += e.prob;
        if (delta == -1) down += e.prob;
      }
    }
    if (std::abs(sum - 1.0) > row_tolerance) report.row_sum_violations.push_back(i);
    if (jumped) report.boundary_violations.push_back(i);
    const int c = states[i].floor;
    if ((c < n && up <= 0.0) || (c > 1 && down <= 0.0)) report.movement_violations.push_back(i);
  }

  std::size_t n_comp = 0;
  const auto comp = strongly_connected_components(m, n_comp);
  std::vector<char> leaks(n_comp, 0);
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    for (const auto& e : m.row(i)) {
      if (e.prob > 0.0 && comp[e.col] != comp[i]) leaks[comp[i]] = 1;
    }
  }
  for (std::size_t k = 0; k < n_comp; ++k) report.closed_classes += leaks[k] ? 0 : 1;
  for (std::size_t i = 0; i < m.dimension(); ++i) report.transient_states += leaks[comp[i]] ? 1 : 0;
  report.irreducible = report.closed_classes == 1;
  return report;
}

// --- Hitting times ---------------------------------------------------------

std::vector<double> hitting_times_to(const TransitionMatrix& m, std::size_t target) {
  const std::size_t n = m.dimension();
  if (target >= n) throw std::invalid_argument("target index out of range");
  const auto pred = predecessors(m);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // States that can reach the target at all.
  std::vector<char> reaches(n, 0);
  std::deque<std::size_t> queue{target};
  reaches[target] = 1;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto u : pred[v]) {
      if (!reaches[u]) {
        reaches[u] = 1;
        queue.push_back(u);
      }
    }
  }
  // Anything that can wander into a dead state before the target has
  // infinite expectation.
  std::vector<char> infinite(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!reaches[v]) {
      infinite[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto u : pred[v]) {
      if (u != target && !infinite[u]) {
        infinite[u] = 1;
        queue.push_back(u);
      }
    }
  }

  std::vector<std::ptrdiff_t> slot(n, -1);
  std::ptrdiff_t unknowns = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (v != target && !infinite[v]) slot[v] = unknowns++;
  }

  std::vector<double> h(n, kInf);
  h[target] = 0.0;
  if (unknowns == 0) return h;

  // (I - Q) h = 1 over the finite, non-target states.
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t v = 0; v < n; ++v) {
    if (slot[v] < 0) continue;
    triplets.emplace_back(slot[v], slot[v], 1.0);
    for (const auto& e : m.row(v)) {
      if (e.prob > 0.0 && slot[e.col] >= 0) triplets.emplace_back(slot[v], slot[e.col], -e.prob);
    }
  }
  Eigen::SparseMatrix<double> a(unknowns, unknowns);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) throw std::runtime_error("hitting-time system is singular");

  const Eigen::VectorXd b = Eigen::VectorXd::Ones(unknowns);
  Eigen::VectorXd x = lu.solve(b);
  Eigen::VectorXd r = b - a * x;
  // Rounding alone leaves a residual of order eps * |h|, so the bound scales
  // with the solution once hitting times exceed 1.
  auto converged = [&] { return max_abs(r) <= kResidualTolerance * std::max(1.0, max_abs(x)); };
  for (int it = 0; it < kMaxRefinements && !converged(); ++it) {
    x += lu.solve(r);
    r = b - a * x;
  }
  if (!converged()) {
    throw std::runtime_error("hitting-time solve did not reach residual tolerance");
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (slot[v] >= 0) h[v] = x[slot[v]];
  }
  return h;
}

std::vector<double> expected_first_hitting_times(const TransitionMatrix& m,
                                                 const CompositeState& target,
                                                 std::span<const CompositeState> starts) {
  const auto t = m.index_of(target);
  const auto h = hitting_times_to(m, t);
  std::vector<double> out;
  out.reserve(starts.size());
  for (const auto& s : starts) {
    const double v = h[m.index_of(s)];
    if (!std::isfinite(v)) {
      throw UnreachableTargetError(to_string(s, m.n_floors()), to_string(target, m.n_floors()));
    }
    out.push_back(v);
  }
  return out;
}

HittingTimeReport objective(const TransitionMatrix& m, std::optional<CompositeState> start) {
  const int n = m.n_floors();
  HittingTimeReport report;
  report.per_target.assign(static_cast<std::size_t>(n), 0.0);
  if (!start) report.from_start.assign(static_cast<std::size_t>(n), std::vector<double>(n, 0.0));

  for (int i = 1; i <= n; ++i) {
    const auto target = empty_state(i);
    const auto ti = static_cast<std::size_t>(i - 1);
    if (start) {
      report.per_target[ti] = expected_first_hitting_times(m, target, std::span(&*start, 1))[0];
    } else {
      std::vector<CompositeState> starts;
      for (int j = 1; j <= n; ++j) {
        if (j != i) starts.push_back(empty_state(j));
      }
      if (starts.empty()) continue;
      const auto h = expected_first_hitting_times(m, target, starts);
      double sum = 0.0;
      for (std::size_t k = 0; k < starts.size(); ++k) {
        report.from_start[ti][static_cast<std::size_t>(starts[k].floor - 1)] = h[k];
        sum += h[k];
      }
      report.per_target[ti] = sum / static_cast<double>(starts.size());
    }
  }
  for (double v : report.per_target) report.objective += v;
  return report;
}

HittingTimeReport objective(const ChainSpec& spec, std::optional<CompositeState> start) {
  return objective(build_transition_matrix(spec), start);
}

// --- Simulation ------------------------------------------------------------

std::vector<CompositeState> simulate_chain(const TransitionMatrix& m, const CompositeState& start,
                                           std::size_t steps, std::uint64_t seed) {
  std::size_t cur = m.index_of(start);
  const RowSampler sampler(m);
  Rng rng(seed);
  std::vector<CompositeState> path;
  path.reserve(steps + 1);
  path.push_back(start);
  for (std::size_t k = 0; k < steps; ++k) {
    cur = sampler.step(cur, rng);
    path.push_back(m.states()[cur]);
  }
  return path;
}

McEstimate monte_carlo_hitting_time(const TransitionMatrix& m, const CompositeState& target,
                                    std::span<const CompositeState> starts, std::size_t episodes,
                                    std::uint64_t seed, std::uint64_t max_steps) {
  if (starts.empty()) throw std::invalid_argument("need at least one start state");
  if (episodes == 0) throw std::invalid_argument("need at least one episode");
  const auto t = m.index_of(target);
  std::vector<std::size_t> start_idx;
  for (const auto& s : starts) start_idx.push_back(m.index_of(s));
  const RowSampler sampler(m);

  // Welford accumulation in episode order.
  double mean = 0.0, m2 = 0.0;
  for (std::size_t e = 0; e < episodes; ++e) {
    Rng rng(derive_seed(seed, e));
    std::size_t cur = start_idx.size() == 1 ? start_idx[0] : start_idx[rng.below(start_idx.size())];
    std::uint64_t steps = 0;
    while (cur != t) {
      cur = sampler.step(cur, rng);
      if (++steps > max_steps) {
        throw std::runtime_error("episode exceeded " + std::to_string(max_steps) + " steps");
      }
    }
    const double x = static_cast<double>(steps);
    const double delta = x - mean;
    mean += delta / static_cast<double>(e + 1);
    m2 += delta * (x - mean);
  }
  McEstimate out;
  out.episodes = episodes;
  out.mean = mean;
  if (episodes > 1) {
    out.standard_error = std::sqrt(m2 / static_cast<double>(episodes - 1) / static_cast<double>(episodes));
  }
  return out;
}

std::vector<McEstimate> monte_carlo_objective(const TransitionMatrix& m, std::size_t episodes,
                                              std::uint64_t seed) {
  const int n = m.n_floors();
  std::vector<McEstimate> out(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    std::vector<CompositeState> starts;
    for (int j = 1; j <= n; ++j) {
      if (j != i) starts.push_back(empty_state(j));
    }
    auto& slot = out[static_cast<std::size_t>(i - 1)];
    if (starts.empty()) {
      slot.episodes = episodes;
      continue;
    }
    slot = monte_carlo_hitting_time(m, empty_state(i), starts, episodes,
                                    derive_seed(seed, static_cast<std::uint64_t>(i)));
  }
  return out;
}

}  // namespace dumbwaiter::chain
