#pragma once

#include <functional>
#include <string_view>

#include "slln/log_power.hpp"
#include "slln/rational.hpp"
#include "slln/tailmodel.hpp"

namespace slln {

enum class Convergence { Converges, Diverges, Unknown };
enum class Moment { Finite, Infinite };

std::string_view to_string(Convergence c);
std::string_view to_string(Moment m);

/// Bertrand test for sum 1 / (n^alpha (ln n)^beta (ln ln n)^gamma), equivalently
/// the integral over t. Never returns Unknown.
Convergence converges(const LogPowerExponents& e);

/// n -> n^{-alpha} (ln n)^{-beta} (ln ln n)^{-gamma}, zero below `start`
/// (default 16, where ln ln n is already above 1).
std::function<double(double)> bertrand_term(const LogPowerExponents& e, double start = 16.0);

/// Exponents of t -> P^{q/p}(|X|^q > t) for a tail C t^{-a} (ln t)^{-b} (ln ln t)^{-g}:
/// (a/p, (q/p) b, (q/p) g). Requires 1 <= q < p.
LogPowerExponents integral_condition_exponents(const LogPowerAsym& asym, const Rational& p, const Rational& q);

/// E|X|^s ln^delta(1 + |X|) < inf. Requires s > 0, delta >= 0.
Moment moment_finite(const LogPowerAsym& asym, const Rational& s, const Rational& delta);

/// sum_n (1/n) int_{min(u_n^p, n)}^n P(|X|^p > t) dt. Requires E|X|^p < inf.
/// With tail index p and log exponents (a, b) the inner integral behaves like
/// (ln n)^{-a} (ln ln n)^{1-b} when a = 1, so the rule is a > 1 or (a = 1, b > 2).
Convergence qp_series_exponents(const LogPowerAsym& asym, const Rational& p);

/// sum_n |E X 1{|X| <= n}|^q / n. Unknown when the spec carries no usable structure.
Convergence truncmean_series(const DistributionSpec& spec, const Rational& q);

}  // namespace slln
