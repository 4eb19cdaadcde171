#include "dumbwaiter/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dumbwaiter/rng.hpp"

namespace dumbwaiter::spatial {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

CallSequence CallSequence::from_positions(std::vector<double> positions,
                                          std::optional<std::uint64_t> seed) {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!in_unit_interval(positions[i])) {
      throw std::invalid_argument("position " + std::to_string(i) +
                                  " lies outside [0, 1]");
    }
  }
  return CallSequence(std::move(positions), seed);
}

void BuildingSpec::validate() const {
  if (floors <= 0) throw std::invalid_argument("floors must be positive");
  if (!(floor_height_m > 0.0)) throw std::invalid_argument("floor height must be positive");
  if (!(elevator_speed_m_per_min > 0.0)) {
    throw std::invalid_argument("elevator speed must be positive");
  }
}

CallSequence generate_calls(std::size_t n_legs, std::uint64_t seed) {
  if (n_legs == 0) throw std::invalid_argument("n_legs must be at least 1");
  Rng rng(seed);
  std::vector<double> positions(n_legs + 1);
  for (auto& x : positions) x = rng.uniform01();
  return CallSequence::from_positions(std::move(positions), seed);
}

LegSeries leg_series(const CallSequence& calls) {
  const auto& x = calls.positions();
  if (x.size() < 2) {
    throw std::invalid_argument("leg series needs at least two positions");
  }
  LegSeries out;
  out.legs.resize(x.size() - 1);
  for (std::size_t k = 0; k + 1 < x.size(); ++k) out.legs[k] = std::abs(x[k + 1] - x[k]);
  return out;
}

double total_distance(const LegSeries& legs) noexcept {
  return std::accumulate(legs.legs.begin(), legs.legs.end(), 0.0);
}

LegMoments analytic_leg_moments() noexcept {
  LegMoments m;
  m.mean = 1.0 / 3.0;
  m.variance = 1.0 / 18.0;
  m.lag1_product_moment = 7.0 / 60.0;
  m.lag1_autocovariance = 1.0 / 180.0;
  m.lag1_autocorrelation = 0.1;
  m.lag2_autocorrelation = 0.0;
  return m;
}

LegMoments empirical_leg_moments(const LegSeries& legs) {
  return pooled_leg_moments(std::span<const LegSeries>(&legs, 1));
}

LegMoments pooled_leg_moments(std::span<const LegSeries> series) {
  if (series.empty()) throw std::invalid_argument("no leg series given");
  std::size_t n = 0;
  double sum = 0.0;
  for (const auto& s : series) {
    n += s.size();
    sum += total_distance(s);
  }
  CenteredLegSums sums(n > 0 ? sum / static_cast<double>(n) : 0.0);
  for (const auto& s : series) sums.add(s);
  return sums.finish();
}

void CenteredLegSums::add(const LegSeries& series) {
  const auto& x = series.legs;
  if (x.size() < 3) throw std::invalid_argument("lag-2 statistics need at least 3 legs");
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - mean_;
    ss_ += d * d;
    if (k + 1 < x.size()) {
      lag1_ += d * (x[k + 1] - mean_);
      raw_lag1_ += x[k] * x[k + 1];
    }
    if (k + 2 < x.size()) lag2_ += d * (x[k + 2] - mean_);
  }
  count_ += x.size();
  pairs_ += x.size() - 1;
}

LegMoments CenteredLegSums::finish() const {
  if (count_ == 0) throw std::invalid_argument("no legs accumulated");
  LegMoments m;
  const double n = static_cast<double>(count_);
  m.mean = mean_;
  m.variance = ss_ / (n - 1.0);
  m.lag1_product_moment = raw_lag1_ / static_cast<double>(pairs_);
  m.lag1_autocovariance = lag1_ / n;
  if (m.variance > 0.0) {
    m.lag1_autocorrelation = m.lag1_autocovariance / m.variance;
    m.lag2_autocorrelation = (lag2_ / n) / m.variance;
  }
  return m;
}

double leg_pdf(double r) noexcept {
  return in_unit_interval(r) ? 2.0 * (1.0 - r) : 0.0;
}

double leg_cdf(double r) noexcept {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return r * (2.0 - r);
}

RouteComparison waitress_route(const Batch& batch) {
  if (!in_unit_interval(batch.a) || !in_unit_interval(batch.b) ||
      !in_unit_interval(batch.c)) {
    throw std::invalid_argument("batch position lies outside [0, 1]");
  }
  RouteComparison out;
  out.dumbwaiter_length = std::abs(batch.c - batch.b) + std::abs(batch.b - batch.a);
  out.waitress_length = std::max({batch.a, batch.b, batch.c}) -
                        std::min({batch.a, batch.b, batch.c});
  return out;
}

WaitressSummary summarize_waitress(std::span<const Batch> batches) {
  if (batches.empty()) throw std::invalid_argument("need at least one batch");
  WaitressSummary out;
  out.batches = batches.size();
  double ratio_sum = 0.0;
  for (const auto& b : batches) {
    const auto r = waitress_route(b);
    if (r.waitress_length > r.dumbwaiter_length) ++out.violations;
    if (r.waitress_length < r.dumbwaiter_length) ++out.strict_improvements;
    ratio_sum += r.dumbwaiter_length > 0.0 ? r.waitress_length / r.dumbwaiter_length : 1.0;
  }
  out.mean_ratio = ratio_sum / static_cast<double>(batches.size());
  return out;
}

std::vector<Batch> generate_batches(std::size_t n_batches, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Batch> out(n_batches);
  for (auto& b : out) {
    b.a = rng.uniform01();
    b.b = rng.uniform01();
    b.c = rng.uniform01();
  }
  return out;
}

WaitressSummary summarize_waitress(std::size_t n_batches, std::uint64_t seed) {
  if (n_batches == 0) throw std::invalid_argument("need at least one batch");
  const auto batches = generate_batches(n_batches, seed);
  return summarize_waitress(std::span<const Batch>(batches));
}

double mean_improvement_ratio(std::size_t n_batches, std::uint64_t seed) {
  return summarize_waitress(n_batches, seed).mean_ratio;
}

double seconds_per_call(const BuildingSpec& building, double mean_leg_fraction) {
  building.validate();
  if (!in_unit_interval(mean_leg_fraction)) {
    throw std::invalid_argument("mean leg fraction must lie in [0, 1]");
  }
  const double metres = mean_leg_fraction * building.total_height_m();
  return metres / building.elevator_speed_m_per_min * 60.0;
}

double rounded_to_tenth_minute_seconds(double seconds) noexcept {
  return std::round(seconds / 6.0) * 6.0;
}

}  // namespace dumbwaiter::spatial
