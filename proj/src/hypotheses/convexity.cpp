#include <algorithm>
#include <cmath>
#include <type_traits>

#include "satconc/errors.hpp"
#include "satconc/hypotheses.hpp"

namespace satconc::hypotheses {

std::string route_name(GammaRoute r) {
  switch (r) {
    case GammaRoute::Direct: return "direct";
    case GammaRoute::Factorized: return "factorized";
    case GammaRoute::Xor: return "xor";
  }
  return "direct";
}

GammaRoute parse_route(const std::string& name) {
  if (name == "direct") return GammaRoute::Direct;
  if (name == "factorized") return GammaRoute::Factorized;
  if (name == "xor") return GammaRoute::Xor;
  throw InvalidInput("unknown Gamma route: " + name);
}

std::vector<double> sample_simplex(int l, Rng& rng) {
  std::vector<double> p(std::size_t{1} << l);
  double sum = 0.0;
  for (double& v : p) {
    v = -std::log(rng.uniform_open());
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

namespace {

enum : std::uint64_t { kPairs = 1, kInterior = 2, kDirection = 3 };

template <class T>
std::vector<T> convert(const std::vector<double>& p);

template <>
std::vector<double> convert<double>(const std::vector<double>& p) { return p; }

template <>
std::vector<Rational> convert<Rational>(const std::vector<double>& p) {
  std::vector<Rational> out;
  Rational sum = 0;
  for (double v : p) {
    out.push_back(to_rational(v));
    sum += out.back();
  }
  for (auto& v : out) v /= sum;
  return out;
}

template <class T>
T scalar(double x) {
  if constexpr (std::is_same_v<T, double>)
    return x;
  else
    return to_rational(x);
}

double as_double(double x) { return x; }
double as_double(const Rational& x) { return static_cast<double>(x); }

template <class T>
std::vector<double> as_doubles(const std::vector<T>& p) {
  std::vector<double> out;
  for (const auto& v : p) out.push_back(as_double(v));
  return out;
}

template <class T>
std::vector<std::vector<T>> boundary_probes(int l) {
  const std::size_t size = std::size_t{1} << l;
  std::vector<std::vector<T>> probes;
  for (std::size_t x = 0; x < size; ++x) {
    std::vector<T> v(size, T(0));
    v[x] = T(1);
    probes.push_back(std::move(v));
  }
  probes.emplace_back(size, T(1) / T(static_cast<int>(size)));
  return probes;
}

template <class T>
ConvexityReport run(const std::function<T(std::span<const T>)>& gamma, const ConvexityOptions& opt) {
  if (opt.l < 1 || opt.l > kMaxReplicas) throw InvalidInput("replica count l must lie in [1, 12]");
  if (opt.pairs < 0 || opt.directions < 0) throw InvalidInput("probe counts must be non-negative");
  if (!(opt.epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  const std::size_t size = std::size_t{1} << opt.l;

  ConvexityReport report;
  report.l = opt.l;
  auto midpoint = [&](const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> m(size);
    for (std::size_t i = 0; i < size; ++i) m[i] = (a[i] + b[i]) / T(2);
    const T excess = gamma(m) - (gamma(a) + gamma(b)) / T(2);
    const double d = as_double(excess);
    if (report.midpoint_tests == 0 || d > report.worst_midpoint) {
      report.worst_midpoint = d;
      report.witness_a = as_doubles(a);
      report.witness_b = as_doubles(b);
    }
    ++report.midpoint_tests;
  };

  // Boundary: every pair of vertices (an edge midpoint) and each vertex against the uniform law.
  const auto probes = boundary_probes<T>(opt.l);
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = i + 1; j < probes.size(); ++j) midpoint(probes[i], probes[j]);

  Rng pair_rng = opt.seed.rng(kPairs);
  for (int t = 0; t < opt.pairs; ++t) {
    const auto a = convert<T>(sample_simplex(opt.l, pair_rng));
    const auto b = convert<T>(sample_simplex(opt.l, pair_rng));
    midpoint(a, b);
  }

  Rng interior_rng = opt.seed.rng(kInterior);
  Rng direction_rng = opt.seed.rng(kDirection);
  const T eps = scalar<T>(opt.epsilon);
  for (int t = 0; t < opt.directions; ++t) {
    const auto nu_d = sample_simplex(opt.l, interior_rng);
    std::vector<double> d(size);
    double mean = 0.0;
    for (double& v : d) {
      v = 2.0 * direction_rng.uniform() - 1.0;
      mean += v;
    }
    mean /= static_cast<double>(size);
    double scale = 1.0;
    for (std::size_t i = 0; i < size; ++i) {
      d[i] -= mean;
      if (d[i] != 0.0) scale = std::min(scale, 0.5 * nu_d[i] / (opt.epsilon * std::abs(d[i])));
    }
    std::vector<T> nu = convert<T>(nu_d);
    std::vector<T> plus(size), minus(size);
    std::vector<T> dir(size);
    for (std::size_t i = 0; i < size; ++i) dir[i] = scalar<T>(d[i] * scale);
    if constexpr (!std::is_same_v<T, double>) {
      T drift(0);
      for (const auto& v : dir) drift += v;
      dir[0] -= drift;
    }
    for (std::size_t i = 0; i < size; ++i) {
      plus[i] = nu[i] + eps * dir[i];
      minus[i] = nu[i] - eps * dir[i];
    }
    const T second = gamma(plus) - T(2) * gamma(nu) + gamma(minus);
    const double deficit = -as_double(second);
    if (report.second_difference_tests == 0 || deficit > report.worst_second_difference)
      report.worst_second_difference = deficit;
    ++report.second_difference_tests;
  }

  report.pass = report.worst_midpoint <= opt.tol &&
                (report.second_difference_tests == 0 || report.worst_second_difference <= opt.tol);
  return report;
}

}  // namespace

ConvexityReport check_convexity(const std::function<double(std::span<const double>)>& gamma,
                                const ConvexityOptions& options) {
  return run<double>(gamma, options);
}

ConvexityReport check_convexity_exact(const std::function<Rational(std::span<const Rational>)>& gamma,
                                      const ConvexityOptions& options) {
  return run<Rational>(gamma, options);
}

}  // namespace satconc::hypotheses
