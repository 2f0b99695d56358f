#include "slln/series_probe.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace slln {
namespace {

double checked(double v, double n) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::domain_error("series term at n=" + std::to_string(n) + " is negative or not finite");
  }
  return v;
}

double block_sum(const std::function<double(double)>& term, int j, const ProbeOptions& opt) {
  if (j == 0) return checked(term(1.0), 1.0);
  const double lo = std::ldexp(1.0, j - 1);
  const double hi = std::ldexp(1.0, j);
  if (lo <= static_cast<double>(opt.exact_block_max)) {
    double s = 0.0;
    for (double n = lo + 1.0; n <= hi; n += 1.0) s += checked(term(n), n);
    return s;
  }
  // Trapezoid in ln n on the integral over [lo, hi], plus the Euler-Maclaurin
  // endpoint correction that turns the integral into the sum over (lo, hi].
  const int m = opt.samples_per_block;
  const double h = std::log(2.0) / (m - 1);
  double acc = 0.0, f_lo = 0.0, f_hi = 0.0;
  for (int k = 0; k < m; ++k) {
    const double x = k == m - 1 ? hi : lo * std::exp(k * h);
    const double f = checked(term(x), x);
    if (k == 0) f_lo = f;
    if (k == m - 1) f_hi = f;
    acc += (k == 0 || k == m - 1 ? 0.5 : 1.0) * f * x;
  }
  return std::max(0.0, acc * h + 0.5 * (f_hi - f_lo));
}

struct Fit {
  double lambda;
  double mu;
  double log_slope;
};

Fit fit_window(const std::vector<double>& b, int first, int last) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0, sj = 0, sjy = 0, sjj = 0;
  const double k = last - first + 1;
  for (int j = first; j <= last; ++j) {
    const double x = std::log((j - 0.5) * std::log(2.0));
    const double y = std::log(b[j]);
    const double t = j * std::log(2.0);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    sj += t, sjy += t * y, sjj += t * t;
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const double lambda = -slope;
  return {lambda, (lambda - 1.0) * (sx / k), (k * sjy - sj * sy) / (k * sjj - sj * sj)};
}

}  // namespace

std::string_view to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::Converges: return "Converges";
    case SeriesClass::Diverges: return "Diverges";
    case SeriesClass::Inconclusive: return "Inconclusive";
  }
  return "?";
}

SeriesProbe classify_partial_sums(const std::function<double(double)>& term, int J, std::string term_rule,
                                  const ProbeOptions& options) {
  if (J < 2 * options.window) throw std::invalid_argument("classify_partial_sums: J must be >= 2 * window");
  if (J > 1000) throw std::invalid_argument("classify_partial_sums: J too large");
  std::vector<double> blocks(static_cast<std::size_t>(J) + 1);
  // Later blocks are costlier for quantile-based terms; hand them out first.
  detail::parallel_for(blocks.size(), options.workers, [&](std::size_t i) {
    const int j = J - static_cast<int>(i);
    blocks[j] = block_sum(term, j, options);
  });
  return classify_block_sums(std::move(blocks), std::move(term_rule), options);
}

SeriesProbe classify_block_sums(std::vector<double> block_sums, std::string term_rule, const ProbeOptions& options) {
  const int J = static_cast<int>(block_sums.size()) - 1;
  const int w = options.window;
  if (J < 2 * w) throw std::invalid_argument("classify_block_sums: need at least 2 * window blocks");
  for (double b : block_sums) {
    if (!std::isfinite(b) || b < 0.0) throw std::domain_error("classify_block_sums: invalid block sum");
  }
  SeriesProbe probe;
  probe.term_rule = std::move(term_rule);
  probe.block_sums = std::move(block_sums);
  const auto& b = probe.block_sums;
  probe.ratio = b[J - 1] > 0.0 ? b[J] / b[J - 1] : (b[J] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);

  bool all_zero = true, any_zero = false;
  for (int j = J - 2 * w + 1; j <= J; ++j) {
    if (j > J - w && b[j] != 0.0) all_zero = false;
    if (b[j] == 0.0) any_zero = true;
  }
  if (all_zero) {
    probe.mu = std::numeric_limits<double>::infinity();
    probe.lambda = std::numeric_limits<double>::infinity();
    probe.log_slope = -std::numeric_limits<double>::infinity();
    probe.classification = SeriesClass::Converges;
    return probe;
  }
  if (any_zero) return probe;

  const Fit last = fit_window(b, J - w + 1, J);
  const Fit prev = fit_window(b, J - 2 * w + 1, J - w);
  probe.lambda = last.lambda;
  probe.mu = last.mu;
  probe.log_slope = last.log_slope;
  probe.mu_drift = last.mu - prev.mu;
  if (probe.mu > 1.0 + options.margin && probe.mu_drift >= -options.drift_tolerance) {
    probe.classification = SeriesClass::Converges;
  } else if (probe.mu < 1.0 - options.margin && probe.mu_drift <= options.drift_tolerance) {
    probe.classification = SeriesClass::Diverges;
  }
  return probe;
}

}  // namespace slln
