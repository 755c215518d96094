#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "satconc/distribution.hpp"
#include "satconc/rng.hpp"
#include "satconc/types.hpp"

namespace satconc::hypotheses {

inline constexpr int kMaxReplicas = 12;

/// A probability law nu on {-1,+1}^l. Entry x is indexed by the l-bit encoding of the tuple
/// (bit r set iff replica r has spin +1).
template <class T>
class BasicReplicaLaw {
 public:
  BasicReplicaLaw() = default;
  /// Throws InvalidInput unless probs has 2^l non-negative entries summing to 1
  /// (within 1e-12 for doubles, exactly for rationals).
  BasicReplicaLaw(int l, std::vector<T> probs);

  static BasicReplicaLaw uniform(int l);
  static BasicReplicaLaw point_mass(int l, std::uint32_t x);
  /// w a + (1 - w) b.
  static BasicReplicaLaw mixture(const BasicReplicaLaw& a, const BasicReplicaLaw& b, const T& w);

  int replicas() const { return l_; }
  std::span<const T> probs() const { return probs_; }
  const T& operator[](std::uint32_t x) const { return probs_[x]; }

 private:
  int l_ = 0;
  std::vector<T> probs_;
};

using ReplicaLaw = BasicReplicaLaw<double>;
using ExactReplicaLaw = BasicReplicaLaw<Rational>;

/// Fourier coefficients f(Q) = E prod_{r in Q} Z^(r), indexed by the subset bit mask Q.
template <class T>
struct BasicFourierTable {
  int l = 0;
  std::vector<T> coeffs;
};
using FourierTable = BasicFourierTable<double>;

// ---- theta-biased norms and H1 ----------------------------------------------------------

/// ||phi||_theta^2 = sum_x phi(x) prod_i (1 + x_i theta) / 2; theta in [-1, 1].
double theta_norm_sq(const ClauseType& phi, double theta);

struct H1aReport {
  std::vector<std::pair<double, double>> curve;  // (theta, g(theta)), g = E_mu log2 ||phi||_theta^2
  double g_zero = 0.0;
  double argmax = 0.0;
  /// min over nonzero grid theta of g(0) - g(theta); +inf when every such g is -inf.
  double min_gap = 0.0;
  double theta_at_min_gap = 0.0;
  bool pass = false;
};

/// Grid check of balanced-assignment dominance: passes iff g(theta) <= g(0) everywhere and
/// g(theta) < g(0) - margin for every grid theta with |theta| >= step.
H1aReport check_h1a(const ClauseTypeDistribution& mu, double step, double margin);

struct H1bReport {
  bool fails_plus = false;   // some support type has phi(+1, ..., +1) = 0
  bool fails_minus = false;  // some support type has phi(-1, ..., -1) = 0
  bool pass = false;
};

H1bReport check_h1b(const ClauseTypeDistribution& mu);

// ---- Gamma_l ----------------------------------------------------------------------------

/// Gamma_l(nu) = E_phi E prod_{r=1}^l (1 - phi(Z^(r))) by direct enumeration of the
/// (2^l)^k coordinate configurations. Requires k l <= 24.
template <class T>
T gamma_direct(const ClauseTypeDistribution& mu, const BasicReplicaLaw<T>& nu);

/// Closed form for k-factorizing laws: sum over replica-to-point maps (i_1..i_l) of
/// [E_{mu_bar} nu(s^(i_1), ..., s^(i_l))]^k. Requires J^l <= 2^20. Agrees with gamma_direct when
/// the J forbidden points are almost surely distinct.
template <class T>
T gamma_factorized(const ColumnLaw& bar_mu, int k, const BasicReplicaLaw<T>& nu);

/// XOR-SAT through the Walsh transform: 2^-l sum_{|Q| even} f(Q)^k.
template <class T>
T gamma_xor(const BasicReplicaLaw<T>& nu, int k);

FourierTable walsh(const ReplicaLaw& nu);
ReplicaLaw walsh_inverse(const FourierTable& table);

template <class T>
BasicFourierTable<T> walsh_generic(const BasicReplicaLaw<T>& nu);

/// Gamma_l as a fixed polynomial in nu: coefficient per configuration precomputed once, so
/// repeated evaluations cost (2^l)^k k multiplications.
template <class T>
class GammaPolynomial {
 public:
  GammaPolynomial(const ClauseTypeDistribution& mu, int l);
  /// Accepts any vector of 2^l entries (not only laws); used for finite differences.
  T operator()(std::span<const T> nu) const;
  int replicas() const { return l_; }
  int arity() const { return k_; }

 private:
  int k_ = 0;
  int l_ = 0;
  std::vector<T> coef_;
};

// ---- convexity --------------------------------------------------------------------------

/// Gamma evaluation route used by the convexity checker.
enum class GammaRoute { Direct, Factorized, Xor };
std::string route_name(GammaRoute r);
GammaRoute parse_route(const std::string& name);

struct ConvexityOptions {
  int l = 1;
  int pairs = 10'000;
  int directions = 1'000;
  double epsilon = 1e-3;
  double tol = 1e-12;
  SeedSpec seed{};
};

struct ConvexityReport {
  int l = 0;
  int midpoint_tests = 0;
  int second_difference_tests = 0;
  /// max of Gamma((a+b)/2) - (Gamma(a)+Gamma(b))/2.
  double worst_midpoint = -1.0;
  /// max of -(Gamma(nu + eps d) - 2 Gamma(nu) + Gamma(nu - eps d)).
  double worst_second_difference = -1.0;
  std::vector<double> witness_a, witness_b;  // pair attaining worst_midpoint
  bool pass = false;
};

/// Midpoint tests over deliberate boundary probes (vertices, the uniform law) plus
/// `pairs` flat-Dirichlet pairs, and `directions` second-difference probes at Dirichlet
/// interior points along random zero-sum directions.
ConvexityReport check_convexity(const std::function<double(std::span<const double>)>& gamma,
                                const ConvexityOptions& options);

/// Same tests in exact rational arithmetic; the Dirichlet draws are converted exactly.
ConvexityReport check_convexity_exact(const std::function<Rational(std::span<const Rational>)>& gamma,
                                      const ConvexityOptions& options);

/// Flat Dirichlet draw on the 2^l simplex.
std::vector<double> sample_simplex(int l, Rng& rng);

}  // namespace satconc::hypotheses
