#include "slln/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "parallel.hpp"
#include "slln/montecarlo.hpp"
#include "slln/random.hpp"

namespace slln {

namespace {

constexpr std::size_t kSupGridPoints = 10000;
constexpr std::size_t kParamGridPoints = 16;
constexpr double kSlackSe = 3.0;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return g;
}

/// Grid between the 10% and 99.9% quantiles; degenerate samples fall back
/// to a short range below the top quantile, or {1} when all values vanish.
std::vector<double> quantile_grid(const std::vector<double>& stat) {
  const double hi = sample_quantile(stat, 0.999);
  if (!(hi > 0.0)) return {1.0};
  double lo = sample_quantile(stat, 0.10);
  if (!(lo > 0.0) || lo >= hi) lo = hi * 1e-3;
  return log_grid(lo, hi, kParamGridPoints);
}

double binomial_var(double p, std::size_t trials) { return p * (1.0 - p) / static_cast<double>(trials); }

double exceed_fraction(const std::vector<double>& sorted, double t) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
  return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

void finish(BoundCheckResult& r) {
  for (const auto& pt : r.points) {
    if (pt.violated) ++r.violations;
    if (pt.rhs > 0.0) r.max_ratio = std::max(r.max_ratio, pt.lhs / pt.rhs);
  }
}

double mean(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return static_cast<double>(s / static_cast<long double>(v.size()));
}

double std_error(const std::vector<double>& v) {
  const double m = mean(v);
  long double s = 0;
  for (double x : v) s += static_cast<long double>(x - m) * (x - m);
  const double n = static_cast<double>(v.size());
  return std::sqrt(static_cast<double>(s) / (n - 1.0) / n);
}

/// Max of t^s P(|X| > t) over a log grid, the given extra points, and a
/// second fine grid spanning the two cells around the best grid point.
double grid_sup(const DistributionSpec& spec, double s, double lo, double hi, const std::vector<double>& extra) {
  auto value = [&](double t) { return std::pow(t, s) * tail_prob(spec, t); };
  const auto grid = log_grid(lo, hi, kSupGridPoints);
  std::size_t arg = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = value(grid[i]);
    if (v > best) best = v, arg = i;
  }
  if (best > 0.0) {
    const double a = grid[arg == 0 ? 0 : arg - 1];
    const double b = grid[std::min(arg + 1, grid.size() - 1)];
    for (double t : log_grid(a, b, 1000)) best = std::max(best, value(t));
  }
  for (double t : extra) best = std::max(best, value(t));
  return best;
}

struct HjSample {
  std::vector<double> sup_stat;  // sup_n b_n |V_n|^q
  std::vector<double> sum_stat;  // sum_n a_n |S_n|^q
};

HjSample simulate_hj(const DistributionSpec& spec, double q, std::size_t N, std::size_t trials, std::uint64_t seed,
                     unsigned workers) {
  std::vector<long double> b(N + 2, 0.0L);
  for (std::size_t n = N; n >= 1; --n) b[n] = b[n + 1] + 1.0L / (static_cast<long double>(n) * n);
  HjSample out{std::vector<double>(trials), std::vector<double>(trials)};
  detail::parallel_for(trials, workers, [&](std::size_t i) {
    RngStream stream(child_seed(seed, i));
    long double s = 0, sum = 0, sup = 0;
    for (std::size_t n = 1; n <= N; ++n) {
      const double v = spec.inverse_cdf(stream.uniform());
      s += v;
      sup = std::max(sup, b[n] * std::pow(std::fabs(static_cast<long double>(v)), static_cast<long double>(q)));
      sum += std::pow(std::fabs(s), static_cast<long double>(q)) / (static_cast<long double>(n) * n);
    }
    out.sup_stat[i] = static_cast<double>(sup);
    out.sum_stat[i] = static_cast<double>(sum);
  });
  return out;
}

}  // namespace

double weak_norm(std::span<const double> a, const Rational& s) {
  require(Rational(1) <= s, "weak_norm requires s >= 1");
  std::vector<double> v(a.size());
  std::transform(a.begin(), a.end(), v.begin(), [](double x) { return std::fabs(x); });
  std::sort(v.begin(), v.end(), std::greater<>());
  const double inv = 1.0 / s.to_double();
  double best = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    best = std::max(best, std::pow(static_cast<double>(k + 1), inv) * v[k]);
  }
  return best;
}

double weak_moment_sup(const DistributionSpec& spec, const Rational& s) {
  const double sd = s.to_double();
  if (spec.support_bound) {
    const double bound = *spec.support_bound;
    if (bound == 0.0) return 0.0;
    return grid_sup(spec, sd, bound * 1e-20, bound, {bound * (1.0 - 1e-12)});
  }
  double limit = 0.0;
  if (spec.tail_asym) {
    const auto& g = *spec.tail_asym;
    if (s == g.alpha && spec.power_tail_sup) return *spec.power_tail_sup;
    const Rational zero(0);
    if (g.alpha < s || (s == g.alpha && (g.beta < zero || (g.beta == zero && g.gamma < zero)))) {
      return std::numeric_limits<double>::infinity();
    }
    if (s == g.alpha && g.beta == zero && g.gamma == zero) limit = g.scale;
  }
  double hi = 1e300;
  try {
    hi = quantile(spec, 1e15);
  } catch (const QuantileError&) {
  }
  if (spec.tail_asym) hi = std::max(hi, spec.tail_asym->valid_from);
  if (spec.continuous_from) hi = std::max(hi, *spec.continuous_from);
  if (!(hi > 0.0)) return 0.0;
  std::vector<double> kinks;
  if (spec.continuous_from && *spec.continuous_from > 0.0) kinks.push_back(*spec.continuous_from * (1.0 - 1e-12));
  return std::max(limit, grid_sup(spec, sd, std::min(1e-8, hi * 1e-20), hi, kinks));
}

BoundCheckResult marcus_pisier_check(const DistributionSpec& spec, std::size_t n, const Rational& s,
                                     std::vector<double> u_grid, std::size_t trials, std::uint64_t seed,
                                     unsigned workers) {
  require(Rational(1) <= s, "marcus_pisier_check requires s >= 1");
  require(n >= 1, "marcus_pisier_check requires n >= 1");
  require(trials >= 2, "marcus_pisier_check requires at least 2 trials");
  for (double u : u_grid) require(u > 0.0, "marcus_pisier_check requires u > 0");

  BoundCheckResult r;
  r.inequality = "marcus-pisier";
  r.trials = trials;
  r.params = {{"spec", spec.name}, {"n", std::to_string(n)}, {"s", s.str()}, {"seed", std::to_string(seed)}};
  const double sup = weak_moment_sup(spec, s);
  if (std::isinf(sup)) {
    r.rhs_infinite = true;
    r.note = "sup_t t^s P(|X| > t) is infinite for s = " + s.str();
    return r;
  }
  r.params.emplace_back("weak_moment_sup", fmt(sup));

  std::vector<double> stat(trials);
  detail::parallel_for(trials, workers, [&](std::size_t i) {
    RngStream stream(child_seed(seed, i));
    const auto v = sample(spec, stream, n);
    stat[i] = weak_norm(v, s);
  });
  if (u_grid.empty()) u_grid = quantile_grid(stat);
  std::sort(stat.begin(), stat.end());

  const double c = 2.0 * std::numbers::e * static_cast<double>(n) * sup;
  for (double u : u_grid) {
    BoundPoint pt{"probability", u, exceed_fraction(stat, u), c / std::pow(u, s.to_double()), 0.0, false};
    pt.slack = kSlackSe * std::sqrt(binomial_var(pt.lhs, trials));
    pt.violated = pt.lhs > pt.rhs + pt.slack;
    r.points.push_back(pt);
  }
  finish(r);
  return r;
}

BoundCheckResult hj_series_check(const DistributionSpec& spec, const Rational& q, std::size_t N,
                                 std::size_t trials, std::uint64_t seed, unsigned workers) {
  require(spec.symmetric(), "hj_series_check requires a symmetric law");
  require(Rational(0) < q, "hj_series_check requires q > 0");
  require(N >= 1, "hj_series_check requires N >= 1");
  require(trials >= 2, "hj_series_check requires at least 2 trials");
  const double qd = q.to_double();
  const double alpha = q <= Rational(1) ? std::pow(2.0, 1.0 - qd) : 1.0;

  BoundCheckResult r;
  r.inequality = "hoffmann-jorgensen-series";
  r.trials = trials;
  r.params = {{"spec", spec.name}, {"q", q.str()},     {"N", std::to_string(N)},
              {"seed", std::to_string(seed)}, {"alpha", fmt(alpha)}};

  auto sample_data = simulate_hj(spec, qd, N, trials, seed, workers);
  std::vector<double> diff(trials);
  for (std::size_t i = 0; i < trials; ++i) diff[i] = sample_data.sup_stat[i] - 2.0 * alpha * sample_data.sum_stat[i];
  const double mean_sup = mean(sample_data.sup_stat);
  const double mean_sum = mean(sample_data.sum_stat);
  const double diff_se = std_error(diff);

  const auto grid = quantile_grid(sample_data.sup_stat);
  std::sort(sample_data.sup_stat.begin(), sample_data.sup_stat.end());
  std::sort(sample_data.sum_stat.begin(), sample_data.sum_stat.end());
  for (double t : grid) {
    const double pl = exceed_fraction(sample_data.sup_stat, t);
    const double pr = exceed_fraction(sample_data.sum_stat, t / alpha);
    BoundPoint pt{"probability", t, pl, 2.0 * pr, 0.0, false};
    pt.slack = kSlackSe * std::sqrt(binomial_var(pl, trials) + 4.0 * binomial_var(pr, trials));
    pt.violated = pt.lhs > pt.rhs + pt.slack;
    r.points.push_back(pt);
  }
  BoundPoint e{"expectation", 0.0, mean_sup, 2.0 * alpha * mean_sum, kSlackSe * diff_se, false};
  e.violated = e.lhs > e.rhs + e.slack;
  r.points.push_back(e);
  finish(r);
  return r;
}

HjSmokeResult hj_t0_smoke(const DistributionSpec& spec, const Rational& q, std::size_t N, std::size_t trials,
                          std::uint64_t seed, unsigned workers) {
  require(spec.symmetric(), "hj_t0_smoke requires a symmetric law");
  require(Rational(0) < q, "hj_t0_smoke requires q > 0");
  require(N >= 1 && trials >= 2, "hj_t0_smoke requires N >= 1 and at least 2 trials");
  const double qd = q.to_double();
  HjSmokeResult out;
  out.alpha = q <= Rational(1) ? std::pow(2.0, 1.0 - qd) : 1.0;
  out.beta = q <= Rational(1) ? 1.0 : std::pow(2.0, qd - 1.0);
  const double ab3 = std::pow(out.alpha + out.beta, 3.0);

  auto d = simulate_hj(spec, qd, N, trials, seed, workers);
  const double mean_sup = mean(d.sup_stat), se_sup = std_error(d.sup_stat);
  const double mean_sum = mean(d.sum_stat), se_sum = std_error(d.sum_stat);
  std::sort(d.sup_stat.begin(), d.sup_stat.end());
  std::sort(d.sum_stat.begin(), d.sum_stat.end());

  // Smallest sample value with at most floor(level * trials) values above it.
  const double level = 1.0 / (24.0 * ab3);
  const auto above = static_cast<std::size_t>(std::floor(level * static_cast<double>(trials)));
  out.t0 = d.sum_stat[trials - 1 - std::min(above, trials - 1)];

  auto& r = out.bounds;
  r.inequality = "hoffmann-jorgensen-t0-smoke";
  r.trials = trials;
  r.params = {{"spec", spec.name}, {"q", q.str()}, {"N", std::to_string(N)}, {"seed", std::to_string(seed)},
              {"t0", fmt(out.t0)}};

  // Three-term display at s = t = u = median of the sum statistic.
  const double m = sample_quantile(d.sum_stat, 0.5);
  const double lhs = exceed_fraction(d.sum_stat, 3.0 * m);
  const double p_sup = exceed_fraction(d.sup_stat, m / (out.beta * out.beta));
  const double p_u = exceed_fraction(d.sum_stat, m / (out.alpha * out.beta));
  const double p_t = exceed_fraction(d.sum_stat, m / (out.alpha * out.beta * out.beta));
  BoundPoint three{"probability", m, lhs, p_sup + 4.0 * p_u * p_t, 0.0, false};
  three.slack = kSlackSe * std::sqrt(binomial_var(lhs, trials) + binomial_var(p_sup, trials) +
                                     16.0 * (p_u * p_u * binomial_var(p_t, trials) + p_t * p_t * binomial_var(p_u, trials)));
  three.violated = three.lhs > three.rhs + three.slack;
  r.points.push_back(three);

  BoundPoint rev{"expectation", out.t0, mean_sum, 6.0 * ab3 * (mean_sup + out.t0), 0.0, false};
  rev.slack = kSlackSe * std::hypot(se_sum, 6.0 * ab3 * se_sup);
  rev.violated = rev.lhs > rev.rhs + rev.slack;
  r.points.push_back(rev);
  finish(r);
  return out;
}

}  // namespace slln
