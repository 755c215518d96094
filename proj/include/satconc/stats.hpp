#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "satconc/rng.hpp"

namespace satconc::stats {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson(std::size_t successes, std::size_t trials, double z = kZ95);

/// Running mean and variance (Welford), fed in a fixed order.
class MeanAccumulator {
 public:
  void add(double x);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Sample variance (n - 1 denominator); 0 for fewer than two values.
  double variance() const;
  double stddev() const;
  double std_error() const;
  Interval normal_interval(double z = kZ95) const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

double sample_stddev(std::span<const double> xs);

/// Percentile bootstrap interval for the sample standard deviation.
Interval bootstrap_stddev(std::span<const double> xs, int resamples, SeedSpec seed, double level = 0.95);

}  // namespace satconc::stats
