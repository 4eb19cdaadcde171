#pragma once

// Continuous "dumbwaiter" model: the elevator visits uniformly distributed
// stops on the normalized building height [0, 1] strictly in call order.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dumbwaiter::spatial {

/// Ordered stop positions on [0, 1]. Immutable once built.
class CallSequence {
 public:
  /// Validates that every position lies in [0, 1]; throws std::invalid_argument.
  static CallSequence from_positions(std::vector<double> positions,
                                     std::optional<std::uint64_t> seed = std::nullopt);

  const std::vector<double>& positions() const noexcept { return positions_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return positions_.size(); }

 private:
  CallSequence(std::vector<double> positions, std::optional<std::uint64_t> seed)
      : positions_(std::move(positions)), seed_(seed) {}

  std::vector<double> positions_;
  std::optional<std::uint64_t> seed_;
};

/// Absolute distances between consecutive stops.
struct LegSeries {
  std::vector<double> legs;

  std::size_t size() const noexcept { return legs.size(); }
  bool operator==(const LegSeries&) const = default;
};

struct LegMoments {
  double mean = 0.0;
  double variance = 0.0;
  double lag1_product_moment = 0.0;  // E[R_k R_{k-1}]
  double lag1_autocovariance = 0.0;
  double lag1_autocorrelation = 0.0;
  double lag2_autocorrelation = 0.0;

  bool operator==(const LegMoments&) const = default;
};

struct BuildingSpec {
  int floors = 10;
  double floor_height_m = 4.2;
  double elevator_speed_m_per_min = 45.0;

  double total_height_m() const noexcept { return floors * floor_height_m; }
  /// Throws std::invalid_argument on non-positive fields.
  void validate() const;

  bool operator==(const BuildingSpec&) const = default;
};

/// n_legs + 1 i.i.d. U(0,1) stops. Throws std::invalid_argument if n_legs == 0.
CallSequence generate_calls(std::size_t n_legs, std::uint64_t seed);

/// Throws std::invalid_argument when fewer than two positions are given.
LegSeries leg_series(const CallSequence& calls);

double total_distance(const LegSeries& legs) noexcept;

/// Closed-form moments of the leg process under uniform calls:
/// mean 1/3, variance 1/18, E[R_k R_{k-1}] = 7/60, so Cov = 1/180 and the
/// lag-1 correlation is 1/10. Legs two apart share no stop, hence lag-2 is 0.
LegMoments analytic_leg_moments() noexcept;

/// Sample statistics of one series. Needs at least 3 legs.
///
/// Variance uses the n-1 denominator. Autocovariances use the biased
/// estimator (1/n) sum (x_k - m)(x_{k+lag} - m); autocorrelations divide it
/// by the sample variance, and are 0 for a constant series.
/// lag1_product_moment is the plain average of x_k x_{k+1}.
LegMoments empirical_leg_moments(const LegSeries& legs);

/// Same estimators pooled over independent series. Lag products never cross
/// series boundaries. Every series needs at least 3 legs.
LegMoments pooled_leg_moments(std::span<const LegSeries> series);

/// Second pass of the pooled estimators: sums centred on a known pooled
/// mean. Lets callers stream series (add, discard, add...) instead of
/// holding all of them.
class CenteredLegSums {
 public:
  explicit CenteredLegSums(double mean) : mean_(mean) {}

  /// Throws std::invalid_argument for series shorter than 3 legs.
  void add(const LegSeries& series);
  LegMoments finish() const;

 private:
  double mean_;
  std::size_t count_ = 0;
  std::size_t pairs_ = 0;
  double ss_ = 0.0;
  double lag1_ = 0.0;
  double lag2_ = 0.0;
  double raw_lag1_ = 0.0;
};

/// Density of a leg: 2(1 - r) on [0, 1], zero elsewhere.
double leg_pdf(double r) noexcept;

/// Distribution function of a leg: 2r - r^2 on [0, 1].
double leg_cdf(double r) noexcept;

struct Batch {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct RouteComparison {
  double waitress_length = 0.0;
  double dumbwaiter_length = 0.0;
};

/// Compares in-order service a -> b -> c with batched service, whose path is
/// the range of the three stops. Throws std::invalid_argument outside [0, 1].
RouteComparison waitress_route(const Batch& batch);

struct WaitressSummary {
  std::size_t batches = 0;
  double mean_ratio = 1.0;
  std::size_t strict_improvements = 0;
  std::size_t violations = 0;  // waitress longer than dumbwaiter; always 0
};

/// Average of waitress/dumbwaiter over the given batches; 0/0 counts as 1.
WaitressSummary summarize_waitress(std::span<const Batch> batches);

/// Same over n_batches i.i.d. uniform triples drawn from `seed`.
WaitressSummary summarize_waitress(std::size_t n_batches, std::uint64_t seed);

/// Draws the triples used by summarize_waitress(n_batches, seed).
std::vector<Batch> generate_batches(std::size_t n_batches, std::uint64_t seed);

double mean_improvement_ratio(std::size_t n_batches, std::uint64_t seed);

/// Mean service time in seconds for a leg covering `mean_leg_fraction` of the
/// building height. Exact, no rounding.
double seconds_per_call(const BuildingSpec& building, double mean_leg_fraction);

/// Rounds a duration to tenths of a minute and reports it in seconds,
/// reproducing the "14/45 min ~ 0.3 min = 18 s" style of quoting.
double rounded_to_tenth_minute_seconds(double seconds) noexcept;

}  // namespace dumbwaiter::spatial
