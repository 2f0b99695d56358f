#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace slln {

enum class SeriesClass { Converges, Diverges, Inconclusive };

std::string_view to_string(SeriesClass c);

/// Decision thresholds for classify_partial_sums.
///
/// Block sums are treated through Cauchy condensation: for a term
/// n^{-1} (ln n)^{-b} (ln ln n)^{-g} the block sum over (2^{j-1}, 2^j] is about
/// ln 2 * s^{-b} (ln s)^{-g} with s = ln n. Over the last `window` blocks we fit
/// the local exponent lambda = -d ln B / d ln s and form
/// mu = (lambda - 1) ln s, which tends to +inf for faster-than-1/n terms,
/// -inf for slower ones, and to g on the b = 1 boundary. The series is called
/// convergent when mu > 1 + margin and divergent when mu < 1 - margin, in
/// both cases only if mu is not drifting back toward the other side.
struct ProbeOptions {
  int window = 8;
  double margin = 0.5;
  double drift_tolerance = 0.1;
  /// Blocks up to this size are summed term by term.
  long exact_block_max = 64;
  /// Log-spaced evaluations per sparsely sampled block.
  int samples_per_block = 64;
  unsigned workers = 0;
};

struct SeriesProbe {
  std::string term_rule;
  /// block_sums[0] = term(1); block_sums[j] = sum over (2^{j-1}, 2^j].
  std::vector<double> block_sums;
  /// B_J / B_{J-1}.
  double ratio = 0.0;
  /// OLS slope of ln B_j against ln 2^j over the last window.
  double log_slope = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  /// mu over the last window minus mu over the window before it.
  double mu_drift = 0.0;
  SeriesClass classification = SeriesClass::Inconclusive;
};

/// Block sums of a nonnegative series up to n = 2^J and their classification.
/// Requires J >= 2 * window. Throws std::domain_error on negative or
/// non-finite terms.
SeriesProbe classify_partial_sums(const std::function<double(double)>& term, int J, std::string term_rule = "",
                                  const ProbeOptions& options = {});

/// Classification from precomputed block sums (index 0 = term(1)).
SeriesProbe classify_block_sums(std::vector<double> block_sums, std::string term_rule = "",
                                const ProbeOptions& options = {});

}  // namespace slln
