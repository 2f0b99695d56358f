#include "slln/tailmodel.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "log_power_density.hpp"

namespace slln {
namespace {

using detail::LogPowerDensity;
using detail::TailInverter;

const double kE = std::numbers::e;
const double kEe = std::exp(std::numbers::e);
constexpr double kEx43ClosedFormFrom = 1e4;

void require(bool ok, const std::string& msg) {
  if (!ok) throw SpecError(msg);
}

/// Inverse CDF of a symmetric law from the inverse of its magnitude tail.
std::function<double(double)> symmetric_inverse(std::function<double(double)> magnitude_at_level) {
  return [q = std::move(magnitude_at_level)](double v) {
    if (v < 0.5) return -q(2.0 * v);
    return q(2.0 * (1.0 - v));
  };
}

}  // namespace

double tail_prob(const DistributionSpec& spec, double t) {
  if (!(t >= 0.0)) throw std::domain_error("tail_prob: t must be nonnegative");
  return spec.tail(t);
}

double quantile(const DistributionSpec& spec, double n) {
  if (!(n >= 1.0)) throw std::domain_error("quantile: n must be >= 1");
  const double level = 1.0 / n;
  if (spec.tail(0.0) < level) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (!(spec.tail(hi) < level)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 1022) {
      throw QuantileError("quantile: tail of '" + spec.name + "' never drops below 1/n");
    }
  }
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (spec.tail(mid) < level) hi = mid;
    else lo = mid;
  }
  return hi;
}

std::vector<double> sample(const DistributionSpec& spec, RngStream& stream, std::size_t count) {
  std::vector<double> out(count);
  for (auto& x : out) x = spec.inverse_cdf(stream.uniform());
  return out;
}

double truncated_mean(const DistributionSpec& spec, double n) {
  if (!spec.abs_mean_finite) throw SpecError("truncated_mean: E|X| is infinite for '" + spec.name + "'");
  if (spec.symmetric()) return 0.0;
  if (!spec.truncated_mean_fn) throw SpecError("truncated_mean: no truncated mean for '" + spec.name + "'");
  return spec.truncated_mean_fn(n);
}

namespace builtin {

double ex4_1_atom(const Rational& p, const Rational& r) {
  LogPowerDensity dens(p.to_double(), r.to_double(), 0.0, kE);
  return 1.0 - dens.upper_mass(kE);
}

double ex4_3_positive_mass() {
  LogPowerDensity dens(1.0, 1.0, 2.0, kEe);
  return dens.upper_mass(kEe);
}

DistributionSpec ex4_1(const Rational& p, const Rational& r) {
  require(Rational(1) < r && r < p && p < Rational(2), "ex4_1 requires 1 < r < p < 2");
  auto dens = std::make_shared<const LogPowerDensity>(p.to_double(), r.to_double(), 0.0, kE);
  const double continuous_mass = dens->upper_mass(kE);
  require(continuous_mass > 0.0 && continuous_mass < 1.0, "ex4_1: normalizing atom outside (0, 1)");
  auto inv = std::make_shared<const TailInverter>([dens](double x) { return dens->upper_mass(x); }, kE);

  DistributionSpec s;
  s.name = "ex4_1:p=" + p.str() + ",r=" + r.str();
  s.tail = [dens, continuous_mass](double t) { return t < kE ? continuous_mass : dens->upper_mass(t); };
  s.inverse_cdf = symmetric_inverse([inv, continuous_mass](double w) {
    return w >= continuous_mass ? 0.0 : (*inv)(w);
  });
  s.tail_asym = LogPowerAsym(1.0 / p.to_double(), p, r, Rational(0));
  s.sign_model = Symmetric{};
  s.declared_mean = 0.0;
  s.abs_mean_finite = true;
  s.continuous_from = kE;
  return s;
}

DistributionSpec log_power(const Rational& alpha, const Rational& a, const Rational& b) {
  require(Rational(0) < alpha, "log_power requires alpha > 0");
  constexpr double x0 = 3.0;
  const LogPowerDensity unit(alpha.to_double(), a.to_double(), b.to_double(), x0);
  const double mass = unit.upper_mass(x0);
  require(std::isfinite(mass) && mass > 0.0, "log_power: density is not normalizable");
  auto dens =
      std::make_shared<const LogPowerDensity>(alpha.to_double(), a.to_double(), b.to_double(), x0, 1.0 / mass);
  auto inv = std::make_shared<const TailInverter>([dens](double x) { return dens->upper_mass(x); }, x0);

  DistributionSpec s;
  s.name = "logpower:alpha=" + alpha.str() + ",a=" + a.str() + ",b=" + b.str();
  s.tail = [dens](double t) { return t < x0 ? 1.0 : dens->upper_mass(t); };
  s.inverse_cdf = symmetric_inverse([inv](double w) { return (*inv)(w); });
  // |X| has density (1/mass) x^{-(alpha+1)}..., so the tail ~ t^{-alpha} ... / (alpha * mass)
  s.tail_asym = LogPowerAsym(1.0 / (alpha.to_double() * mass), alpha, a, b);
  s.sign_model = Symmetric{};
  s.declared_mean = 0.0;
  s.abs_mean_finite = alpha > Rational(1) || (alpha == Rational(1) && (a > Rational(1) || (a == Rational(1) && b > Rational(1))));
  if (!s.abs_mean_finite) s.declared_mean.reset();
  s.continuous_from = x0;
  return s;
}

DistributionSpec ex4_2(const Rational& p) {
  require(Rational(1) < p && p < Rational(2), "ex4_2 requires 1 < p < 2");
  auto s = log_power(p, Rational(1), Rational(2));
  s.name = "ex4_2:p=" + p.str();
  return s;
}

DistributionSpec ex4_3() {
  auto dens = std::make_shared<const LogPowerDensity>(1.0, 1.0, 2.0, kEe);
  const double a = dens->upper_mass(kEe);
  const double atom = 1.0 / (1.0 - a);
  auto inv = std::make_shared<const TailInverter>([dens](double x) { return dens->upper_mass(x); }, kEe);

  DistributionSpec s;
  s.name = "ex4_3";
  s.tail = [dens, a, atom](double t) {
    if (t < atom) return 1.0;
    if (t < kEe) return a;
    return dens->upper_mass(t);
  };
  s.inverse_cdf = [inv, a, atom](double v) {
    if (v <= 1.0 - a) return -atom;
    return (*inv)(1.0 - v);
  };
  s.truncated_mean_fn = [dens, a, atom](double n) {
    if (n < atom) return 0.0;
    if (n >= kEx43ClosedFormFrom) return -1.0 / std::log(std::log(n));
    const double positive = n > kEe ? dens->first_moment(kEe, n) : 0.0;
    return -atom * (1.0 - a) + positive;
  };
  s.tail_asym = LogPowerAsym(1.0, Rational(1), Rational(1), Rational(2));
  s.sign_model = AtomPlusPositiveTail{-atom, 1.0 - a};
  s.declared_mean = 0.0;
  s.trunc_mean_asym = TruncMeanAsym{-1, Rational(0), Rational(0), Rational(1)};
  s.abs_mean_finite = true;
  s.continuous_from = kEe;
  // The tail ratio is about 1 - 1/ln t - 2/(ln t ln ln t): 0.89 at 1e6, 0.92 at 1e8.
  s.asym_threshold = 1e8;
  return s;
}

DistributionSpec pareto(const Rational& alpha, bool centered) {
  require(Rational(0) < alpha, "pareto requires alpha > 0");
  const double al = alpha.to_double();
  DistributionSpec s;
  s.name = "pareto:alpha=" + alpha.str() + (centered ? ",centered=true" : "");
  s.tail_asym = LogPowerAsym(1.0, alpha, Rational(0), Rational(0));
  s.sign_model = Asymmetric{};
  s.abs_mean_finite = alpha > Rational(1);
  if (!centered) {
    s.tail = [al](double t) { return t < 1.0 ? 1.0 : std::pow(t, -al); };
    s.inverse_cdf = [al](double v) { return std::pow(1.0 - v, -1.0 / al); };
    s.continuous_from = 1.0;
    s.power_tail_sup = 1.0;
    if (s.abs_mean_finite) {
      const double mu = al / (al - 1.0);
      s.declared_mean = mu;
      s.truncated_mean_fn = [al, mu](double n) { return n < 1.0 ? 0.0 : mu * (1.0 - std::pow(n, 1.0 - al)); };
      s.trunc_mean_asym = TruncMeanAsym{1, Rational(0), Rational(0), Rational(0)};
    }
    return s;
  }
  require(alpha > Rational(1), "centered pareto requires alpha > 1");
  const double mu = al / (al - 1.0);
  // X = Y - mu with Y >= 1
  s.tail = [al, mu](double t) {
    const double up = mu + t < 1.0 ? 1.0 : std::pow(mu + t, -al);
    const double down = mu - t > 1.0 ? 1.0 - std::pow(mu - t, -al) : 0.0;
    return up + down;
  };
  s.inverse_cdf = [al, mu](double v) { return std::pow(1.0 - v, -1.0 / al) - mu; };
  s.truncated_mean_fn = [al, mu](double n) {
    const double hi = mu + n;
    const double lo = std::max(1.0, mu - n);
    if (lo == 1.0) return -mu * std::pow(hi, -al) * (hi - 1.0);
    const double first = mu * (std::pow(lo, 1.0 - al) - std::pow(hi, 1.0 - al));
    const double prob = std::pow(lo, -al) - std::pow(hi, -al);
    return first - mu * prob;
  };
  s.declared_mean = 0.0;
  s.trunc_mean_asym = TruncMeanAsym{-1, alpha - Rational(1), Rational(0), Rational(0)};
  s.continuous_from = 0.0;
  return s;
}

DistributionSpec rademacher() {
  DistributionSpec s;
  s.name = "rademacher";
  s.tail = [](double t) { return t < 1.0 ? 1.0 : 0.0; };
  s.inverse_cdf = [](double v) { return v < 0.5 ? -1.0 : 1.0; };
  s.sign_model = Symmetric{};
  s.declared_mean = 0.0;
  s.support_bound = 1.0;
  s.abs_mean_finite = true;
  return s;
}

DistributionSpec zero() {
  DistributionSpec s;
  s.name = "zero";
  s.tail = [](double) { return 0.0; };
  s.inverse_cdf = [](double) { return 0.0; };
  s.sign_model = Symmetric{};
  s.declared_mean = 0.0;
  s.support_bound = 0.0;
  s.abs_mean_finite = true;
  return s;
}

}  // namespace builtin

DistributionSpec parse_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  std::map<std::string, std::string> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw SpecError("malformed spec parameter '" + std::string(item) + "' in '" + std::string(text) + "'");
      }
      params[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  auto take = [&](const std::string& key) -> Rational {
    const auto it = params.find(key);
    if (it == params.end()) throw SpecError("spec '" + name + "' requires parameter '" + key + "'");
    const std::string value = it->second;
    params.erase(it);
    try {
      return Rational::parse(value);
    } catch (const std::exception& e) {
      throw SpecError("spec '" + name + "': " + e.what());
    }
  };
  auto finish = [&](DistributionSpec s) {
    if (!params.empty()) throw SpecError("spec '" + name + "': unknown parameter '" + params.begin()->first + "'");
    return s;
  };

  if (name == "ex4_1") {
    const auto p = take("p");
    const auto r = take("r");
    return finish(builtin::ex4_1(p, r));
  }
  if (name == "ex4_2") return finish(builtin::ex4_2(take("p")));
  if (name == "ex4_3") return finish(builtin::ex4_3());
  if (name == "rademacher") return finish(builtin::rademacher());
  if (name == "zero") return finish(builtin::zero());
  if (name == "pareto") {
    const auto alpha = take("alpha");
    bool centered = false;
    if (auto it = params.find("centered"); it != params.end()) {
      if (it->second == "true") centered = true;
      else if (it->second != "false") throw SpecError("pareto: centered must be true or false");
      params.erase(it);
    }
    return finish(builtin::pareto(alpha, centered));
  }
  if (name == "logpower") {
    const auto alpha = take("alpha");
    const auto a = take("a");
    const auto b = take("b");
    return finish(builtin::log_power(alpha, a, b));
  }
  throw SpecError("unknown distribution '" + name + "'");
}

}  // namespace slln
