#include "slln/tailmodel.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

using slln::DistributionSpec;
using slln::Rational;
namespace builtin = slln::builtin;

namespace {

const double kEe = std::exp(std::numbers::e);

// Upper incomplete gamma with negative first argument via one downward step
// of Gamma(a+1, z) = a Gamma(a, z) + z^a e^{-z}.
double upper_gamma_neg(double a, double z) {
  return (boost::math::tgamma(a + 1.0, z) - std::pow(z, a) * std::exp(-z)) / a;
}

// int_t^inf x^{-(p+1)} (ln x)^{-r} dx = p^{r-1} Gamma(1 - r, p ln t).
double ex4_1_tail_oracle(double p, double r, double t) {
  return std::pow(p, r - 1.0) * upper_gamma_neg(1.0 - r, p * std::log(t));
}

// Composite Simpson on [a, b] with m (even) panels.
template <class F>
double simpson(F f, double a, double b, int m) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

std::vector<DistributionSpec> corpus() {
  return {builtin::ex4_1(Rational(8, 5), Rational(5, 4)),
          builtin::ex4_2(Rational(3, 2)),
          builtin::ex4_3(),
          builtin::pareto(Rational(3, 2)),
          builtin::pareto(Rational(5, 2), true),
          builtin::rademacher(),
          builtin::zero(),
          builtin::log_power(Rational(3, 2), Rational(1), Rational(3))};
}

}  // namespace

TEST(TailProb, ClosedForms) {
  EXPECT_DOUBLE_EQ(slln::tail_prob(builtin::pareto(Rational(2)), 2.0), 0.25);
  EXPECT_EQ(slln::tail_prob(builtin::rademacher(), 0.5), 1.0);
  EXPECT_EQ(slln::tail_prob(builtin::rademacher(), 1.0), 0.0);
  EXPECT_EQ(slln::tail_prob(builtin::zero(), 0.0), 0.0);
  EXPECT_THROW(slln::tail_prob(builtin::zero(), -1.0), std::domain_error);
}

TEST(TailProb, Ex41MatchesIncompleteGamma) {
  for (auto [p, r] : {std::pair{Rational(8, 5), Rational(5, 4)}, std::pair{Rational(19, 10), Rational(11, 10)}}) {
    const auto spec = builtin::ex4_1(p, r);
    for (double t : {3.0, 10.0, 1e3, 1e8, 1e15}) {
      const double want = ex4_1_tail_oracle(p.to_double(), r.to_double(), t);
      EXPECT_NEAR(spec.tail(t) / want, 1.0, 1e-8) << "t=" << t;
    }
    const double atom = builtin::ex4_1_atom(p, r);
    const double want_atom = 1.0 - ex4_1_tail_oracle(p.to_double(), r.to_double(), std::numbers::e);
    EXPECT_NEAR(atom, want_atom, 1e-10);
    EXPECT_GT(atom, 0.0);
    EXPECT_LT(atom, 1.0);
    EXPECT_DOUBLE_EQ(spec.tail(1.0), 1.0 - atom);
  }
}

TEST(TailProb, Ex41Asymptotics) {
  const auto spec = builtin::ex4_1(Rational(8, 5), Rational(5, 4));
  ASSERT_TRUE(spec.tail_asym);
  EXPECT_DOUBLE_EQ(spec.tail_asym->scale, 1.0 / 1.6);
  EXPECT_EQ(spec.tail_asym->alpha, Rational(8, 5));
  EXPECT_EQ(spec.tail_asym->beta, Rational(5, 4));
  EXPECT_EQ(spec.tail_asym->gamma, Rational(0));
  EXPECT_EQ(spec.declared_mean, 0.0);
}

TEST(TailProb, Ex42AgainstDensityQuadrature) {
  const double p = 1.5;
  const auto spec = builtin::ex4_2(Rational(3, 2));
  // Oracle: normalizer and tail by Simpson in u = ln x.
  auto g = [p](double u) { return std::exp(-p * u) / u / std::pow(std::log(u), 2); };
  const double u_cap = 80.0;
  const double half_mass = simpson(g, std::log(3.0), u_cap, 400000);
  const double b = 1.0 / (2.0 * half_mass);
  const double t = 1e8;
  const double want = 2.0 * b * simpson(g, std::log(t), u_cap, 400000);
  EXPECT_NEAR(spec.tail(t) / want, 1.0, 1e-8);
  const double asym = (2.0 * b / p) * std::pow(t, -p) / std::log(t) / std::pow(std::log(std::log(t)), 2);
  EXPECT_NEAR(spec.tail(t) / asym, 1.0, 0.1);
  EXPECT_NEAR((*spec.tail_asym)(t) / asym, 1.0, 1e-9);
}

TEST(TailProb, MonotoneOnLogGrid) {
  for (const auto& spec : corpus()) {
    double prev = spec.tail(0.0);
    EXPECT_LE(prev, 1.0);
    for (int i = 0; i < 100; ++i) {
      const double t = std::pow(10.0, -2.0 + 0.2 * i);
      const double cur = spec.tail(t);
      EXPECT_LE(cur, prev) << spec.name << " t=" << t;
      EXPECT_GE(cur, 0.0);
      prev = cur;
    }
    EXPECT_LT(spec.tail(1e300), 1e-100) << spec.name;
  }
}

TEST(TailProb, AsymptoticConsistency) {
  for (const auto& spec : corpus()) {
    if (!spec.tail_asym) continue;
    for (double t : {1e6, 1e8, 1e12, 1e20, 1e40}) {
      if (t < spec.asym_threshold) continue;
      const double ratio = spec.tail(t) / (*spec.tail_asym)(t);
      EXPECT_GE(ratio, 1.0 - spec.asym_tolerance) << spec.name << " t=" << t;
      EXPECT_LE(ratio, 1.0 + spec.asym_tolerance) << spec.name << " t=" << t;
    }
  }
}

TEST(TailProb, AsymptoticThresholds) {
  for (const auto& spec : corpus()) {
    if (!spec.tail_asym) continue;
    EXPECT_LE(spec.asym_tolerance, 0.1) << spec.name;
    // Only ex4_3 needs a later threshold: its tail carries a 1/ln t correction.
    EXPECT_EQ(spec.asym_threshold, spec.name == "ex4_3" ? 1e8 : 1e6) << spec.name;
  }
}

TEST(Quantile, ParetoClosedForm) {
  const auto spec = builtin::pareto(Rational(3, 2));
  EXPECT_NEAR(slln::quantile(spec, 1000), 100.0, 1e-9 * 100.0);
  for (double n : {10.0, 1e3, 1e6}) {
    const double want = std::pow(n, 2.0 / 3.0);
    EXPECT_LE(std::abs(slln::quantile(spec, n) - want), 1e-9 * want);
  }
}

TEST(Quantile, TwoPointAndDegenerate) {
  for (double n : {1.0, 2.0, 1e6}) EXPECT_DOUBLE_EQ(slln::quantile(builtin::rademacher(), n), 1.0);
  EXPECT_EQ(slln::quantile(builtin::zero(), 5), 0.0);
  EXPECT_THROW(slln::quantile(builtin::zero(), 0.5), std::domain_error);
}

TEST(Quantile, MalformedTailThrows) {
  DistributionSpec bad;
  bad.name = "bad";
  bad.tail = [](double) { return 1.0; };
  EXPECT_THROW(slln::quantile(bad, 10), slln::QuantileError);
}

TEST(Quantile, Sandwich) {
  for (const auto& spec : corpus()) {
    if (!spec.continuous_from) continue;
    for (double n : {2.0, 10.0, 100.0, 1e4}) {
      const double u = slln::quantile(spec, n);
      if (u <= *spec.continuous_from) continue;
      EXPECT_LE(spec.tail(u), 1.0 / n) << spec.name << " n=" << n;
      EXPECT_GE(spec.tail(u - 1e-6 * u), 1.0 / n) << spec.name << " n=" << n;
    }
  }
}

TEST(Quantile, NondecreasingInN) {
  for (const auto& spec : corpus()) {
    double prev = 0.0;
    for (int k = 0; k <= 40; ++k) {
      const double u = slln::quantile(spec, std::ldexp(1.0, k));
      EXPECT_GE(u, prev) << spec.name;
      prev = u;
    }
  }
}

TEST(Quantile, PowerIdentity) {
  for (const auto& spec : corpus()) {
    for (double q : {1.0, 1.3, 2.0}) {
      DistributionSpec powered;
      powered.name = spec.name + "^q";
      powered.tail = [&spec, q](double t) { return spec.tail(std::pow(t, 1.0 / q)); };
      for (double n : {10.0, 1e3, 1e6}) {
        const double u = slln::quantile(spec, n);
        const double uq = slln::quantile(powered, n);
        EXPECT_NEAR(uq, std::pow(u, q), 1e-9 * std::max(1.0, std::pow(u, q))) << spec.name << " q=" << q;
      }
    }
  }
}

TEST(Quantile, SublinearWhenMeanFinite) {
  for (const auto& spec : corpus()) {
    if (!spec.abs_mean_finite) continue;
    double last = 1.0;
    for (int k = 20; k <= 30; ++k) {
      const double n = std::ldexp(1.0, k);
      last = slln::quantile(spec, n) / n;
    }
    EXPECT_LT(last, 1e-2) << spec.name;
  }
}

TEST(Quantile, Ex42ApproachesClosedFormAsymptotic) {
  // u_n ~ (2bn)^{1/p} (ln n)^{-1/p} (ln ln n)^{-2/p}; the ratio drifts to 1
  // only at a (ln ln n)^{-1} rate.
  const double p = 1.5;
  const auto spec = builtin::ex4_2(Rational(3, 2));
  const double two_b = spec.tail_asym->scale * p;
  auto ratio = [&](double n) {
    const double approx = std::pow(two_b * n, 1 / p) * std::pow(std::log(n), -1 / p) *
                         std::pow(std::log(std::log(n)), -2 / p);
    return slln::quantile(spec, n) / approx;
  };
  double prev = ratio(1e6);
  EXPECT_GT(prev, 1.0);
  for (double n : {1e9, 1e15, 1e30, 1e60, 1e120}) {
    const double cur = ratio(n);
    EXPECT_LT(cur, prev) << n;
    EXPECT_GT(cur, 1.0) << n;
    prev = cur;
  }
  EXPECT_LT(prev, 1.25);
}

TEST(TruncatedMean, SymmetricIsZero) {
  for (const auto& spec : corpus()) {
    if (!spec.symmetric()) continue;
    if (!spec.abs_mean_finite) continue;
    for (double n : {0.5, 3.0, 1e3, 1e9}) EXPECT_EQ(slln::truncated_mean(spec, n), 0.0);
  }
}

TEST(TruncatedMean, Ex43Formula) {
  const auto spec = builtin::ex4_3();
  EXPECT_NEAR(slln::truncated_mean(spec, 1e6) / (-1.0 / std::log(std::log(1e6))), 1.0, 1e-3);
  // The formula is exact for n >= e^e, so the quadrature branch must reproduce it.
  for (double n : {20.0, 100.0, 1e3, 9999.0}) {
    EXPECT_NEAR(slln::truncated_mean(spec, n), -1.0 / std::log(std::log(n)), 1e-8) << n;
  }
  EXPECT_EQ(slln::truncated_mean(spec, 0.5), 0.0);
  ASSERT_TRUE(spec.trunc_mean_asym);
  EXPECT_EQ(spec.trunc_mean_asym->sign, -1);
  EXPECT_EQ(spec.trunc_mean_asym->log_exp, Rational(0));
  EXPECT_EQ(spec.trunc_mean_asym->loglog_exp, Rational(1));
}

TEST(TruncatedMean, Ex43AgainstDirectQuadrature) {
  const auto spec = builtin::ex4_3();
  // Independent oracle in v = ln ln x: the positive mass a and the first
  // moment up to n, with the atom at -1/(1-a) carrying mass 1 - a.
  auto mass_integrand = [](double v) {
    const double u = std::exp(v);
    return std::exp(-u) / (v * v);
  };
  const double a = simpson(mass_integrand, 1.0, std::log(800.0), 2000000);
  EXPECT_NEAR(builtin::ex4_3_positive_mass(), a, 1e-10);
  const double n = 1e9;
  const double moment = simpson([](double v) { return 1.0 / (v * v); }, 1.0, std::log(std::log(n)), 20000);
  const double want = -1.0 + moment;
  EXPECT_NEAR(slln::truncated_mean(spec, n) / want, 1.0, 1e-6);
}

TEST(TruncatedMean, CenteredParetoClosedForm) {
  const auto spec = builtin::pareto(Rational(5, 2), true);
  const double mu = 2.5 / 1.5;
  // Oracle: E (Y - mu) 1{|Y - mu| <= n} by Simpson on the Pareto density.
  for (double n : {0.5, 1.0, 10.0, 1e3}) {
    const double lo = std::max(1.0, mu - n);
    const double hi = mu + n;
    const double want = simpson([mu](double y) { return (y - mu) * 2.5 * std::pow(y, -3.5); }, lo, hi, 200000);
    EXPECT_NEAR(slln::truncated_mean(spec, n), want, 1e-9) << n;
  }
}

TEST(TruncatedMean, InfiniteMeanThrows) {
  EXPECT_THROW(slln::truncated_mean(builtin::pareto(Rational(4, 5)), 10), slln::SpecError);
}

TEST(Sample, RademacherSigns) {
  slln::RngStream rng(7);
  const auto xs = slln::sample(builtin::rademacher(), rng, 100000);
  double sum = 0.0;
  for (double x : xs) {
    EXPECT_TRUE(x == 1.0 || x == -1.0);
    sum += x;
  }
  EXPECT_LT(std::abs(sum / xs.size()), 3.0 / std::sqrt(1e5));
}

TEST(Sample, DeterministicGivenStream) {
  const auto spec = builtin::ex4_2(Rational(3, 2));
  slln::RngStream a(99), b(99);
  EXPECT_EQ(slln::sample(spec, a, 1000), slln::sample(spec, b, 1000));
}

TEST(Sample, TailFrequenciesWithinBinomialBand) {
  const std::size_t m = 400000;
  std::uint64_t seed = 11;
  for (const auto& spec : corpus()) {
    slln::RngStream rng(seed++);
    const auto xs = slln::sample(spec, rng, m);
    for (double t : {1.0, 10.0, 100.0}) {
      const double prob = spec.tail(t);
      std::size_t hits = 0;
      for (double x : xs) hits += std::abs(x) > t;
      const double sd = std::sqrt(m * prob * (1.0 - prob));
      EXPECT_LE(std::abs(static_cast<double>(hits) - m * prob), 3.0 * sd + 1.0) << spec.name << " t=" << t;
    }
  }
}

TEST(Sample, Ex43TruncatedEmpiricalMeans) {
  // E X = 0 is reached only through rare huge positive draws, so a raw sample
  // mean sits near -1/ln ln(max draw). The truncated means are checked instead.
  const auto spec = builtin::ex4_3();
  slln::RngStream rng(2024);
  const auto xs = slln::sample(spec, rng, 1000000);
  const double m = static_cast<double>(xs.size());
  for (double n : {100.0, 1e3, 1e4}) {
    long double s = 0, s2 = 0;
    for (double x : xs) {
      if (std::abs(x) > n) continue;
      s += x;
      s2 += static_cast<long double>(x) * x;
    }
    const double mean = static_cast<double>(s / m);
    const double se = std::sqrt(static_cast<double>(s2 / m) - mean * mean) / std::sqrt(m);
    EXPECT_LT(std::abs(mean - slln::truncated_mean(spec, n)), 3.0 * se) << n;
  }
  const auto& atom = std::get<slln::AtomPlusPositiveTail>(spec.sign_model);
  std::size_t at_atom = 0;
  for (double x : xs) at_atom += x == atom.atom_location;
  EXPECT_NEAR(at_atom / m, atom.atom_mass, 3.0 * std::sqrt(atom.atom_mass * (1 - atom.atom_mass) / m));
}

TEST(Sample, DeclaredMeansMatchSimulation) {
  std::uint64_t seed = 500;
  for (const auto& spec : {builtin::pareto(Rational(5, 2)), builtin::pareto(Rational(5, 2), true),
                           builtin::ex4_1(Rational(8, 5), Rational(5, 4))}) {
    ASSERT_TRUE(spec.declared_mean);
    slln::RngStream rng(seed++);
    const auto xs = slln::sample(spec, rng, 1000000);
    long double s = 0, s2 = 0;
    for (double x : xs) {
      s += x;
      s2 += static_cast<long double>(x) * x;
    }
    const double n = static_cast<double>(xs.size());
    const double mean = static_cast<double>(s / n);
    // Variance may be infinite; a 5-SE band on the sample SE is a loose sanity check.
    const double se = std::sqrt(static_cast<double>(s2 / n) - mean * mean) / std::sqrt(n);
    EXPECT_LT(std::abs(mean - *spec.declared_mean), 5.0 * se) << spec.name;
  }
}

TEST(Sample, InversionTableMatchesBisection) {
  for (const auto& spec : {builtin::ex4_1(Rational(8, 5), Rational(5, 4)), builtin::ex4_2(Rational(3, 2)),
                           builtin::log_power(Rational(3, 2), Rational(1), Rational(3))}) {
    for (double w : {0.3, 1e-2, 1e-4, 1e-7, 1e-10, 1e-14, 1e-17, 1e-22}) {
      if (w >= spec.tail(*spec.continuous_from)) continue;
      // The lower branch keeps full relative precision in the level.
      const double x = -spec.inverse_cdf(w / 2.0);
      const double exact = slln::quantile(spec, 1.0 / w);
      EXPECT_NEAR(x / exact, 1.0, 1e-6) << spec.name << " w=" << w;
    }
  }
}

TEST(Sample, Ex43InversionTableMatchesBisection) {
  const auto spec = builtin::ex4_3();
  const double a = builtin::ex4_3_positive_mass();
  // Levels 2^-k keep 1 - w exact.
  for (double w : {std::ldexp(1.0, -7), std::ldexp(1.0, -10), std::ldexp(1.0, -20), std::ldexp(1.0, -40),
                   std::ldexp(1.0, -52)}) {
    ASSERT_LT(w, a);
    const double x = spec.inverse_cdf(1.0 - w);
    EXPECT_NEAR(x / slln::quantile(spec, 1.0 / w), 1.0, 1e-6) << w;
  }
  EXPECT_GT(spec.inverse_cdf(1.0 - a * 0.999999), kEe * 0.999);
}

TEST(Builtins, ParameterRanges) {
  EXPECT_THROW(builtin::ex4_1(Rational(8, 5), Rational(9, 5)), slln::SpecError);
  EXPECT_THROW(builtin::ex4_1(Rational(2), Rational(3, 2)), slln::SpecError);
  EXPECT_THROW(builtin::ex4_1(Rational(3, 2), Rational(1)), slln::SpecError);
  EXPECT_THROW(builtin::ex4_2(Rational(2)), slln::SpecError);
  EXPECT_THROW(builtin::ex4_2(Rational(1)), slln::SpecError);
  EXPECT_THROW(builtin::pareto(Rational(1), true), slln::SpecError);
  EXPECT_THROW(builtin::pareto(Rational(0)), slln::SpecError);
}

TEST(Builtins, DeclaredZeroMeans) {
  EXPECT_TRUE(builtin::ex4_1(Rational(8, 5), Rational(5, 4)).declares_zero_mean());
  EXPECT_TRUE(builtin::ex4_2(Rational(3, 2)).declares_zero_mean());
  EXPECT_TRUE(builtin::ex4_3().declares_zero_mean());
  EXPECT_FALSE(builtin::pareto(Rational(2)).declares_zero_mean());
  EXPECT_TRUE(builtin::pareto(Rational(2), true).declares_zero_mean());
}

TEST(ParseSpec, RoundTripsBuiltins) {
  EXPECT_EQ(slln::parse_spec("ex4_1:p=8/5,r=5/4").name, "ex4_1:p=8/5,r=5/4");
  EXPECT_EQ(slln::parse_spec("pareto:alpha=5/2,centered=true").name, "pareto:alpha=5/2,centered=true");
  EXPECT_EQ(slln::parse_spec("pareto:alpha=2").name, "pareto:alpha=2");
  EXPECT_EQ(slln::parse_spec("ex4_2:p=1.5").name, "ex4_2:p=3/2");
  EXPECT_EQ(slln::parse_spec("ex4_3").name, "ex4_3");
  EXPECT_EQ(slln::parse_spec("rademacher").name, "rademacher");
  EXPECT_EQ(slln::parse_spec("logpower:alpha=3/2,a=1,b=3").name, "logpower:alpha=3/2,a=1,b=3");
}

TEST(ParseSpec, RejectsMalformed) {
  EXPECT_THROW(slln::parse_spec("nosuch"), slln::SpecError);
  EXPECT_THROW(slln::parse_spec("ex4_1:p=8/5"), slln::SpecError);
  EXPECT_THROW(slln::parse_spec("ex4_2:p=3/2,z=1"), slln::SpecError);
  EXPECT_THROW(slln::parse_spec("ex4_2:p"), slln::SpecError);
  EXPECT_THROW(slln::parse_spec("ex4_2:p=abc"), slln::SpecError);
  EXPECT_THROW(slln::parse_spec("pareto:alpha=2,centered=maybe"), slln::SpecError);
}
