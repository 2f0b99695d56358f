#include "slln/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "parallel.hpp"
#include "slln/random.hpp"

namespace slln {
namespace {

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::vector<std::uint64_t> resolve_checkpoints(const SimConfig& cfg) {
  if (!cfg.checkpoints.empty()) return cfg.checkpoints;
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= cfg.n_max; n <<= 1) out.push_back(n);
  return out;
}

double type7(const std::vector<double>& sorted, double prob) {
  const double h = (sorted.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  if (sorted[lo] == sorted[hi]) return sorted[lo];
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

CheckpointStats summarize(std::uint64_t n, std::vector<double> values) {
  CheckpointStats s;
  s.n = n;
  long double sum = 0;
  for (double v : values) sum += v;
  s.mean = static_cast<double>(sum / values.size());
  std::sort(values.begin(), values.end());
  s.median = type7(values, 0.5);
  s.q05 = type7(values, 0.05);
  s.q95 = type7(values, 0.95);
  return s;
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (!is_pow2(cfg.n_max)) throw std::invalid_argument("n_max must be a power of two");
  if (cfg.p.sign() <= 0 || cfg.q.sign() <= 0) throw std::invalid_argument("p and q must be positive");
  std::uint64_t prev = 0;
  for (auto c : cfg.checkpoints) {
    if (!is_pow2(c) || c > cfg.n_max) throw std::invalid_argument("checkpoints must be powers of two <= n_max");
    if (c <= prev) throw std::invalid_argument("checkpoints must be strictly ascending");
    prev = c;
  }
}

SimResult simulate_weighted_series(const DistributionSpec& spec, const SimConfig& cfg) {
  validate(cfg);
  SimResult res;
  res.checkpoints = resolve_checkpoints(cfg);
  const std::size_t k = res.checkpoints.size();
  const std::uint64_t n_end = res.checkpoints.back();
  res.T.assign(cfg.reps, std::vector<double>(k));
  res.M.assign(cfg.reps, std::vector<double>(k));
  res.seeds.resize(cfg.reps);
  std::vector<char> overflow(cfg.reps, 0);
  const long double inv_p = 1.0L / cfg.p.to_long_double();
  const long double q = cfg.q.to_long_double();

  detail::parallel_for(cfg.reps, cfg.workers, [&](std::size_t rep) {
    const std::uint64_t seed = child_seed(cfg.master_seed, rep);
    res.seeds[rep] = seed;
    RngStream stream(seed);
    long double s = 0, t = 0;
    double block_max = 0.0;
    std::size_t next = 0;
    for (std::uint64_t n = 1; n <= n_end; ++n) {
      s += spec.inverse_cdf(stream.uniform());
      const long double ln_n = std::log(static_cast<long double>(n));
      const long double a = std::fabs(s);
      if (a > 0) {
        const long double ln_ratio = std::log(a) - inv_p * ln_n;
        t += std::exp(q * ln_ratio - ln_n);
        block_max = std::max(block_max, static_cast<double>(std::exp(ln_ratio)));
      }
      if (is_pow2(n)) {
        if (next < k && res.checkpoints[next] == n) {
          res.T[rep][next] = static_cast<double>(t);
          res.M[rep][next] = block_max;
          ++next;
        }
        block_max = 0.0;  // the next block is (n, 2n]
      }
    }
    overflow[rep] = !std::isfinite(static_cast<double>(t));
  });

  for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
    if (overflow[rep]) res.overflowed.push_back(rep);
  }
  std::vector<double> column(cfg.reps);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) column[rep] = res.T[rep][j];
    res.t_stats.push_back(summarize(res.checkpoints[j], column));
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) column[rep] = res.M[rep][j];
    res.m_stats.push_back(summarize(res.checkpoints[j], column));
  }
  return res;
}

std::vector<CheckpointStats> sup_norm_trajectory(const DistributionSpec& spec, const SimConfig& cfg) {
  return simulate_weighted_series(spec, cfg).m_stats;
}

TermEstimate estimate_expected_term(const DistributionSpec& spec, const Rational& p, const Rational& q,
                                    std::uint64_t n, std::size_t reps, std::uint64_t seed, unsigned workers) {
  if (reps < 30) throw std::invalid_argument("estimate_expected_term requires reps >= 30");
  if (n < 1) throw std::invalid_argument("estimate_expected_term requires n >= 1");
  std::vector<long double> values(reps);
  const long double ln_n = std::log(static_cast<long double>(n));
  const long double inv_p = 1.0L / p.to_long_double(), ql = q.to_long_double();
  detail::parallel_for(reps, workers, [&](std::size_t rep) {
    RngStream stream(child_seed(seed, rep));
    long double s = 0;
    for (std::uint64_t i = 0; i < n; ++i) s += spec.inverse_cdf(stream.uniform());
    const long double a = std::fabs(s);
    values[rep] = a > 0 ? std::exp(ql * (std::log(a) - inv_p * ln_n) - ln_n) : 0.0L;
  });
  long double sum = 0, sum2 = 0;
  for (auto v : values) sum += v;
  const long double mean = sum / reps;
  for (auto v : values) sum2 += (v - mean) * (v - mean);
  const long double var = sum2 / (reps - 1);
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / reps))};
}

double sample_quantile(std::vector<double> values, double prob) {
  if (values.empty()) throw std::invalid_argument("sample_quantile of an empty sample");
  if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("sample_quantile: prob outside [0, 1]");
  std::sort(values.begin(), values.end());
  return type7(values, prob);
}

void write_trajectories_csv(const SimResult& result, std::ostream& os) {
  os << "rep,checkpoint,T,M\n";
  char buf[96];
  for (std::size_t rep = 0; rep < result.T.size(); ++rep) {
    for (std::size_t j = 0; j < result.checkpoints.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%zu,%llu,%.17g,%.17g\n", rep,
                    static_cast<unsigned long long>(result.checkpoints[j]), result.T[rep][j], result.M[rep][j]);
      os << buf;
    }
  }
}

}  // namespace slln
