#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slln/rational.hpp"
#include "slln/series_probe.hpp"
#include "slln/tailmodel.hpp"

namespace slln {

enum class Regime { Q_LT_P, Q_EQ_P_GT1, Q_GT_P_P_GT1, P_EQ_Q_EQ_1, P1_Q_GT1, P_LT1, Unsupported };
enum class Verdict { Holds, Fails, Inconclusive };
enum class Method { Symbolic, SymbolicDerived, Numeric };
enum class Target { Slln, MeanSeries };
enum class Overall { InSLLN, NotInSLLN, SeriesConverges, SeriesDiverges, Inconclusive };

std::string_view to_string(Regime r);
std::string_view to_string(Verdict v);
std::string_view to_string(Method m);
std::string_view to_string(Target t);
std::string_view to_string(Overall o);

struct ConditionVerdict {
  std::string name;
  Verdict verdict = Verdict::Inconclusive;
  Method method = Method::Symbolic;
  std::string evidence;
  /// The probe behind a numeric verdict.
  std::optional<SeriesProbe> probe;
  /// Numeric probe run next to a symbolic verdict when cross-checking is on.
  std::optional<SeriesProbe> cross_check;
};

struct CriterionReport {
  Target target = Target::Slln;
  Rational p;
  Rational q;
  Regime regime = Regime::Unsupported;
  std::vector<ConditionVerdict> conditions;
  Overall overall = Overall::Inconclusive;
  std::vector<std::string> notes;
};

struct CriteriaOptions {
  /// Also run the numeric probe for symbolic verdicts and note disagreements.
  bool cross_check = false;
  int probe_blocks = 24;
  ProbeOptions probe;
};

class UnsupportedRegime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact case split on (p, q). Requires p > 0 and q > 0.
Regime detect_regime(const Rational& p, const Rational& q);

/// Conditions under which X is in SLLN(p, q).
CriterionReport classify_slln(const DistributionSpec& spec, const Rational& p, const Rational& q,
                              const CriteriaOptions& options = {});

/// Conditions under which sum (1/n) E(|S_n| / n^{1/p})^q < inf.
CriterionReport classify_mean_series(const DistributionSpec& spec, const Rational& p, const Rational& q,
                                     const CriteriaOptions& options = {});

/// sum (1/n) int_{min(u_n^p, n)}^n P(|X|^p > t) dt, block by block up to 2^J.
SeriesProbe qp_series_numeric(const DistributionSpec& spec, const Rational& p, int J,
                              const ProbeOptions& options = {});
/// int_0^inf P^{q/p}(|X|^q > t) dt, summed over integer t.
SeriesProbe integral_condition_numeric(const DistributionSpec& spec, const Rational& p, const Rational& q, int J,
                                       const ProbeOptions& options = {});
/// E|X|^s ln^delta(1 + |X|) through int (t^s ln^delta(1 + t))' P(|X| > t) dt.
SeriesProbe moment_numeric(const DistributionSpec& spec, const Rational& s, const Rational& delta, int J,
                           const ProbeOptions& options = {});
/// sum |E X 1{|X| <= n}|^q / n.
SeriesProbe truncmean_series_numeric(const DistributionSpec& spec, const Rational& q, int J,
                                     const ProbeOptions& options = {});

}  // namespace slln
