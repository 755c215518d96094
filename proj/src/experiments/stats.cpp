#include "satconc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "satconc/errors.hpp"

namespace satconc::stats {

Interval wilson(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) out.low = 0.0;
  if (successes == trials) out.high = 1.0;
  out.low = std::min(out.low, p);
  out.high = std::max(out.high, p);
  return out;
}

void MeanAccumulator::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

double MeanAccumulator::variance() const { return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1); }

double MeanAccumulator::stddev() const { return std::sqrt(variance()); }

double MeanAccumulator::std_error() const { return n_ == 0 ? 0.0 : stddev() / std::sqrt(static_cast<double>(n_)); }

Interval MeanAccumulator::normal_interval(double z) const {
  const double half = z * std_error();
  return {mean_ - half, mean_ + half};
}

double sample_stddev(std::span<const double> xs) {
  MeanAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc.stddev();
}

Interval bootstrap_stddev(std::span<const double> xs, int resamples, SeedSpec seed, double level) {
  if (resamples < 1) throw InvalidInput("bootstrap needs at least one resample");
  if (xs.size() < 2) return {0.0, 0.0};
  Rng rng = seed.rng(0);
  std::vector<double> stds;
  stds.reserve(static_cast<std::size_t>(resamples));
  std::vector<double> draw(xs.size());
  for (int b = 0; b < resamples; ++b) {
    for (double& d : draw) d = xs[rng.below(xs.size())];
    stds.push_back(sample_stddev(draw));
  }
  std::sort(stds.begin(), stds.end());
  const double tail = (1.0 - level) / 2.0;
  auto at = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(stds.size() - 1) + 0.5));
    return stds[std::min(idx, stds.size() - 1)];
  };
  return {at(tail), at(1.0 - tail)};
}

}  // namespace satconc::stats
