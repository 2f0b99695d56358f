#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slln/rational.hpp"
#include "slln/tailmodel.hpp"

namespace slln {

/// sup_k k^{1/s} a*_k with a* the nonincreasing rearrangement of |a_k|.
/// Empty input gives 0. Throws std::invalid_argument unless s >= 1.
double weak_norm(std::span<const double> a, const Rational& s);

/// One compared pair: lhs <= rhs is expected up to `slack` (3 standard errors).
struct BoundPoint {
  std::string kind;  // "probability" or "expectation"
  double param = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool violated = false;
};

struct BoundCheckResult {
  std::string inequality;
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Largest lhs / rhs over points with rhs > 0.
  double max_ratio = 0.0;
  std::vector<BoundPoint> points;
  std::vector<std::pair<std::string, std::string>> params;
  /// Set when the right-hand side is infinite; no points are evaluated then.
  bool rhs_infinite = false;
  std::string note;
};

/// sup_{t > 0} t^s P(|X| > t): closed form when the spec carries one,
/// +inf when the tail asymptotic makes it diverge, else a 10^4-point log grid.
double weak_moment_sup(const DistributionSpec& spec, const Rational& s);

/// P(||(V_k)||_{s,inf} > u) <= (2e / u^s) sup_t t^s n P(|V| > t) for i.i.d. V_k.
/// An empty u_grid means 16 log-spaced points between the empirical 10% and
/// 99.9% quantiles of the weak norm.
BoundCheckResult marcus_pisier_check(const DistributionSpec& spec, std::size_t n, const Rational& s,
                                     std::vector<double> u_grid, std::size_t trials, std::uint64_t seed,
                                     unsigned workers = 0);

/// With a_n = 1/n^2 and b_n = sum_{k=n}^N a_k, checks on the same trials
///   P(sup_n b_n |V_n|^q > t) <= 2 P(sum_n a_n |S_n|^q > t / alpha)
/// at 16 log-spaced t between the 10% and 99.9% quantiles of the left statistic, and
///   E sup_n b_n |V_n|^q <= 2 alpha E sum_n a_n |S_n|^q,
/// alpha = 2^{1-q} for q <= 1 and 1 otherwise. Requires a symmetric spec.
BoundCheckResult hj_series_check(const DistributionSpec& spec, const Rational& q, std::size_t N,
                                 std::size_t trials, std::uint64_t seed, unsigned workers = 0);

/// Single-configuration check of the three-term tail display and the reverse
/// expectation bound, both involving t0 = inf{t : P(sum > t) <= (24 (alpha+beta)^3)^{-1}}.
struct HjSmokeResult {
  double alpha = 0.0;
  double beta = 0.0;
  double t0 = 0.0;
  BoundCheckResult bounds;
};

HjSmokeResult hj_t0_smoke(const DistributionSpec& spec, const Rational& q, std::size_t N, std::size_t trials,
                          std::uint64_t seed, unsigned workers = 0);

}  // namespace slln
