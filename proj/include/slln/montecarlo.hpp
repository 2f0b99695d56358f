#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "slln/rational.hpp"
#include "slln/tailmodel.hpp"

namespace slln {

struct SimConfig {
  std::uint64_t master_seed = 0;
  std::size_t reps = 512;
  /// Power of two.
  std::uint64_t n_max = std::uint64_t{1} << 16;
  /// Powers of two up to n_max, ascending. Empty means every 2^k <= n_max.
  std::vector<std::uint64_t> checkpoints;
  Rational p{1};
  Rational q{1};
  /// 0 = hardware concurrency. Never affects results.
  unsigned workers = 0;
};

/// Order statistics across replications at one checkpoint (type 7 quantiles).
struct CheckpointStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double q05 = 0.0;
  double q95 = 0.0;
};

struct SimResult {
  std::vector<std::uint64_t> checkpoints;
  /// T[rep][k] = sum_{n <= N_k} (1/n) (|S_n| / n^{1/p})^q.
  std::vector<std::vector<double>> T;
  /// M[rep][k] = max over N_k/2 < n <= N_k of |S_n| / n^{1/p}.
  std::vector<std::vector<double>> M;
  std::vector<std::uint64_t> seeds;
  /// Replications whose T overflowed to +inf.
  std::vector<std::size_t> overflowed;
  std::vector<CheckpointStats> t_stats;
  std::vector<CheckpointStats> m_stats;
};

/// Throws std::invalid_argument for an invalid configuration.
void validate(const SimConfig& cfg);

/// Replication i draws from RngStream(child_seed(master_seed, i)); partial sums
/// and T accumulate in long double.
SimResult simulate_weighted_series(const DistributionSpec& spec, const SimConfig& cfg);

/// Checkpoint statistics of M_N; the m_stats of a full simulation.
std::vector<CheckpointStats> sup_norm_trajectory(const DistributionSpec& spec, const SimConfig& cfg);

struct TermEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo mean and standard error of (1/n) (|S_n| / n^{1/p})^q. Requires reps >= 30.
TermEstimate estimate_expected_term(const DistributionSpec& spec, const Rational& p, const Rational& q,
                                    std::uint64_t n, std::size_t reps, std::uint64_t seed, unsigned workers = 0);

/// Type 7 (linear interpolation) quantile of unsorted values.
double sample_quantile(std::vector<double> values, double prob);

/// CSV with header rep,checkpoint,T,M; doubles printed with 17 significant digits.
void write_trajectories_csv(const SimResult& result, std::ostream& os);

}  // namespace slln
