#include "slln/bertrand.hpp"

#include <cmath>
#include <stdexcept>

namespace slln {

std::string_view to_string(Convergence c) {
  switch (c) {
    case Convergence::Converges: return "Converges";
    case Convergence::Diverges: return "Diverges";
    case Convergence::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(Moment m) { return m == Moment::Finite ? "Finite" : "Infinite"; }

Convergence converges(const LogPowerExponents& e) {
  const Rational one(1);
  if (e.alpha > one) return Convergence::Converges;
  if (e.alpha < one) return Convergence::Diverges;
  if (e.beta > one) return Convergence::Converges;
  if (e.beta < one) return Convergence::Diverges;
  return e.gamma > one ? Convergence::Converges : Convergence::Diverges;
}

LogPowerExponents integral_condition_exponents(const LogPowerAsym& asym, const Rational& p, const Rational& q) {
  if (!(Rational(1) <= q && q < p)) throw std::invalid_argument("integral_condition_exponents requires 1 <= q < p");
  const Rational k = q / p;
  return {asym.alpha / p, k * asym.beta, k * asym.gamma};
}

Moment moment_finite(const LogPowerAsym& asym, const Rational& s, const Rational& delta) {
  if (s.sign() <= 0) throw std::invalid_argument("moment_finite requires s > 0");
  if (delta.sign() < 0) throw std::invalid_argument("moment_finite requires delta >= 0");
  if (s < asym.alpha) return Moment::Finite;
  if (s > asym.alpha) return Moment::Infinite;
  // E|X|^s ln^d(1+|X|) = int s t^{s-1} ln^d(1+t) P(|X| > t) dt + ..., integrand ~ t^{-1} (ln t)^{d-a} (ln ln t)^{-b}
  const auto c = converges({Rational(1), asym.beta - delta, asym.gamma});
  return c == Convergence::Converges ? Moment::Finite : Moment::Infinite;
}

Convergence qp_series_exponents(const LogPowerAsym& asym, const Rational& p) {
  if (moment_finite(asym, p, Rational(0)) != Moment::Finite) {
    throw std::invalid_argument("qp_series_exponents requires E|X|^p < inf");
  }
  if (asym.alpha > p) return Convergence::Converges;
  const Rational one(1);
  if (asym.beta > one) return Convergence::Converges;
  // moment finiteness already forces beta >= 1 here
  return asym.gamma > Rational(2) ? Convergence::Converges : Convergence::Diverges;
}

std::function<double(double)> bertrand_term(const LogPowerExponents& e, double start) {
  const double a = e.alpha.to_double(), b = e.beta.to_double(), g = e.gamma.to_double();
  return [a, b, g, start](double n) {
    if (n < start) return 0.0;
    const double l = std::log(n);
    return std::exp(-a * l - b * std::log(l) - g * std::log(std::log(l)));
  };
}

Convergence truncmean_series(const DistributionSpec& spec, const Rational& q) {
  if (q < Rational(1)) throw std::invalid_argument("truncmean_series requires q >= 1");
  if (!spec.abs_mean_finite) throw std::invalid_argument("truncmean_series requires E|X| < inf");
  if (spec.symmetric()) return Convergence::Converges;
  // Mean zero and bounded: the truncated mean vanishes once n exceeds the bound.
  if (spec.support_bound && spec.declares_zero_mean()) return Convergence::Converges;
  if (!spec.trunc_mean_asym) return Convergence::Unknown;
  const auto& t = *spec.trunc_mean_asym;
  return converges({Rational(1) + q * t.power_exp, q * t.log_exp, q * t.loglog_exp});
}

}  // namespace slln
