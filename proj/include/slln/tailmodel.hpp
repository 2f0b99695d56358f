#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slln/log_power.hpp"
#include "slln/random.hpp"
#include "slln/rational.hpp"

namespace slln {

struct Symmetric {};

/// X = atom_location with probability atom_mass, otherwise X > 0.
struct AtomPlusPositiveTail {
  double atom_location = 0.0;
  double atom_mass = 0.0;
};

/// Neither symmetric nor atom-plus-positive (e.g. a shifted Pareto law).
struct Asymmetric {};

using SignModel = std::variant<Symmetric, AtomPlusPositiveTail, Asymmetric>;

/// E X 1{|X| <= n} ~ sign * n^{-power} (ln n)^{-log} (ln ln n)^{-loglog}.
struct TruncMeanAsym {
  int sign = 1;
  Rational power_exp{0};
  Rational log_exp{0};
  Rational loglog_exp{0};
};

/// A real random variable X described through the tail of |X|.
///
/// Built-ins are constructed once and never mutated; every callable captures
/// only immutable state, so a spec may be shared freely across threads.
struct DistributionSpec {
  std::string name;

  /// t -> P(|X| > t) on [0, inf).
  std::function<double(double)> tail;
  /// Inverse CDF of X on (0, 1); used for inverse-transform sampling.
  std::function<double(double)> inverse_cdf;
  /// n -> E X 1{|X| <= n} for laws that are not symmetric.
  std::function<double(double)> truncated_mean_fn;

  std::optional<LogPowerAsym> tail_asym;
  SignModel sign_model = Symmetric{};
  std::optional<double> declared_mean;
  std::optional<TruncMeanAsym> trunc_mean_asym;
  /// |X| <= support_bound almost surely.
  std::optional<double> support_bound;
  bool abs_mean_finite = false;
  /// sup_{t > 0} t^alpha P(|X| > t) in closed form, alpha from tail_asym.
  std::optional<double> power_tail_sup;

  /// tail(t) / tail_asym(t) lies within [1 - asym_tolerance, 1 + asym_tolerance]
  /// for t >= asym_threshold.
  double asym_tolerance = 0.1;
  double asym_threshold = 1e6;
  /// The tail is continuous and strictly decreasing above this point.
  std::optional<double> continuous_from;

  [[nodiscard]] bool symmetric() const { return std::holds_alternative<Symmetric>(sign_model); }
  [[nodiscard]] bool declares_zero_mean() const { return declared_mean && *declared_mean == 0.0; }
};

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class QuantileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double tail_prob(const DistributionSpec& spec, double t);

/// u_n = inf{t : P(|X| > t) < 1/n}, by bracket doubling from [0, 1] and then
/// bisection to 1e-12 relative width. Throws QuantileError if the tail never
/// drops below 1/n before the bracket reaches 2^1023.
double quantile(const DistributionSpec& spec, double n);

/// Inverse-transform draws; advances `stream` by exactly `count` uniforms.
std::vector<double> sample(const DistributionSpec& spec, RngStream& stream, std::size_t count);

/// E X 1{|X| <= n}. Throws SpecError when E|X| is infinite.
double truncated_mean(const DistributionSpec& spec, double n);

namespace builtin {

/// Symmetric, P(X = 0) = b and P(|X| > t) = int_t^inf x^{-(p+1)} (ln x)^{-r} dx for
/// t >= e. The integrand carries ln x (not ln t); b normalizes the law.
DistributionSpec ex4_1(const Rational& p, const Rational& r);
/// Symmetric with density b |x|^{-(p+1)} (ln|x|)^{-1} (ln ln|x|)^{-2} on |x| > 3.
DistributionSpec ex4_2(const Rational& p);
/// P(X = -1/(1-a)) = 1 - a and P(X > x) = int_x^inf dt / (t^2 ln t (ln ln t)^2)
/// for x >= e^e, with a that integral taken from e^e.
DistributionSpec ex4_3();
/// Pareto with P(Y > t) = t^{-alpha}, t >= 1; optionally centered to mean zero.
DistributionSpec pareto(const Rational& alpha, bool centered = false);
DistributionSpec rademacher();
DistributionSpec zero();
/// Symmetric density proportional to |x|^{-(alpha+1)} (ln|x|)^{-a} (ln ln|x|)^{-b}
/// on |x| > 3. ex4_2(p) is the member (p, 1, 2).
DistributionSpec log_power(const Rational& alpha, const Rational& a, const Rational& b);

/// Normalizing atom b of ex4_1 and mass a of ex4_3's positive part.
double ex4_1_atom(const Rational& p, const Rational& r);
double ex4_3_positive_mass();

}  // namespace builtin

/// Parses "name:key=value,..." e.g. "ex4_1:p=8/5,r=5/4", "pareto:alpha=5/2,centered=true".
DistributionSpec parse_spec(std::string_view text);

}  // namespace slln
