#include <algorithm>
#include <cmath>
#include <limits>

#include "satconc/errors.hpp"
#include "satconc/hypotheses.hpp"

namespace satconc::hypotheses {

double theta_norm_sq(const ClauseType& phi, double theta) {
  if (!(theta >= -1.0 && theta <= 1.0)) throw InvalidInput("theta must lie in [-1, 1]");
  const int k = phi.arity();
  const double up = (1.0 + theta) / 2.0;
  const double down = (1.0 - theta) / 2.0;
  // Sum over whichever of the satisfying or violating points is the smaller set.
  const bool by_zeros = 2 * phi.count_ones() > phi.table_size();
  double total = 0.0;
  for (std::uint32_t x = 0; x < phi.table_size(); ++x) {
    if (phi.at(x) == by_zeros) continue;
    double w = 1.0;
    for (int i = 0; i < k; ++i) w *= ((x >> i) & 1u) ? up : down;
    total += w;
  }
  return by_zeros ? std::max(0.0, 1.0 - total) : total;
}

namespace {

double expected_log_norm(const ClauseTypeDistribution& mu, double theta) {
  double g = 0.0;
  for (const auto& wt : mu.support()) {
    const double norm = theta_norm_sq(wt.type, theta);
    if (norm <= 0.0) return -std::numeric_limits<double>::infinity();
    g += wt.weight * std::log2(norm);
  }
  return g;
}

}  // namespace

H1aReport check_h1a(const ClauseTypeDistribution& mu, double step, double margin) {
  if (!(step > 0.0 && step <= 0.1)) throw InvalidInput("theta grid step must lie in (0, 0.1]");
  if (!(margin >= 0.0)) throw InvalidInput("margin must be non-negative");
  if (mu.size() == 0) throw InvalidInput("empty clause-type distribution");

  std::vector<double> grid;
  const long half = static_cast<long>(std::floor(1.0 / step + 1e-9));
  for (long j = -half; j <= half; ++j) grid.push_back(static_cast<double>(j) * step);
  if (static_cast<double>(half) * step < 1.0 - 1e-12) {
    grid.insert(grid.begin(), -1.0);
    grid.push_back(1.0);
  }

  H1aReport report;
  report.g_zero = expected_log_norm(mu, 0.0);
  report.min_gap = std::numeric_limits<double>::infinity();
  report.argmax = 0.0;
  double best = report.g_zero;
  bool pass = true;
  for (double theta : grid) {
    const double g = expected_log_norm(mu, theta);
    report.curve.emplace_back(theta, g);
    if (theta == 0.0) continue;
    if (g > best) {
      best = g;
      report.argmax = theta;
    }
    const double gap = report.g_zero - g;
    if (gap < report.min_gap) {
      report.min_gap = gap;
      report.theta_at_min_gap = theta;
    }
    if (!(g <= report.g_zero) || !(g < report.g_zero - margin)) pass = false;
  }
  report.pass = pass;
  return report;
}

H1bReport check_h1b(const ClauseTypeDistribution& mu) {
  H1bReport report;
  for (const auto& wt : mu.support()) {
    const std::uint32_t plus = wt.type.table_size() - 1;
    if (!wt.type.at(plus)) report.fails_plus = true;
    if (!wt.type.at(0)) report.fails_minus = true;
  }
  report.pass = report.fails_plus && report.fails_minus;
  return report;
}

}  // namespace satconc::hypotheses
