#include "slln/criteria.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "slln/bertrand.hpp"
#include "slln/quadrature.hpp"

namespace slln {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Q_LT_P: return "Q_LT_P";
    case Regime::Q_EQ_P_GT1: return "Q_EQ_P_GT1";
    case Regime::Q_GT_P_P_GT1: return "Q_GT_P_P_GT1";
    case Regime::P_EQ_Q_EQ_1: return "P_EQ_Q_EQ_1";
    case Regime::P1_Q_GT1: return "P1_Q_GT1";
    case Regime::P_LT1: return "P_LT1";
    case Regime::Unsupported: return "Unsupported";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Symbolic: return "Symbolic";
    case Method::SymbolicDerived: return "Symbolic-Derived";
    case Method::Numeric: return "Numeric";
  }
  return "?";
}

std::string_view to_string(Target t) { return t == Target::Slln ? "slln" : "mean-series"; }

std::string_view to_string(Overall o) {
  switch (o) {
    case Overall::InSLLN: return "InSLLN";
    case Overall::NotInSLLN: return "NotInSLLN";
    case Overall::SeriesConverges: return "SeriesConverges";
    case Overall::SeriesDiverges: return "SeriesDiverges";
    case Overall::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Regime detect_regime(const Rational& p, const Rational& q) {
  if (p.sign() <= 0 || q.sign() <= 0) throw std::invalid_argument("detect_regime requires p > 0 and q > 0");
  const Rational one(1), two(2);
  if (q < one || p >= two) return Regime::Unsupported;
  if (p < one) return Regime::P_LT1;
  if (p == one) return q == one ? Regime::P_EQ_Q_EQ_1 : Regime::P1_Q_GT1;
  if (q < p) return Regime::Q_LT_P;
  return q == p ? Regime::Q_EQ_P_GT1 : Regime::Q_GT_P_P_GT1;
}

namespace {
constexpr double kTailIntegralTol = 1e-9;
constexpr unsigned kTailIntegralDepth = 12;
}  // namespace

SeriesProbe qp_series_numeric(const DistributionSpec& spec, const Rational& p, int J, const ProbeOptions& options) {
  const double pd = p.to_double();
  auto tail_p = [&spec, pd](double t) { return spec.tail(std::pow(t, 1.0 / pd)); };
  auto term = [&spec, pd, tail_p](double n) {
    const double lo = std::min(std::pow(quantile(spec, n), pd), n);
    if (lo >= n) return 0.0;
    double inner = 0.0;
    double from = lo;
    if (from < 1.0) {
      inner += quad::finite(tail_p, from, std::min(1.0, n), kTailIntegralTol, kTailIntegralDepth).value;
      from = 1.0;
    }
    if (n > from) {
      auto g = [tail_p](double v) { return tail_p(std::exp(v)) * std::exp(v); };
      inner += quad::finite(g, std::log(from), std::log(n), kTailIntegralTol, kTailIntegralDepth).value;
    }
    return std::max(0.0, inner) / n;
  };
  return classify_partial_sums(term, J, "(1/n) int_{min(u_n^p, n)}^n P(|X|^p > t) dt, p=" + p.str(), options);
}

SeriesProbe integral_condition_numeric(const DistributionSpec& spec, const Rational& p, const Rational& q, int J,
                                       const ProbeOptions& options) {
  const double qd = q.to_double(), k = (q / p).to_double();
  auto term = [&spec, qd, k](double t) { return std::pow(spec.tail(std::pow(t, 1.0 / qd)), k); };
  return classify_partial_sums(term, J, "P^{q/p}(|X|^q > t), p=" + p.str() + ", q=" + q.str(), options);
}

SeriesProbe moment_numeric(const DistributionSpec& spec, const Rational& s, const Rational& delta, int J,
                           const ProbeOptions& options) {
  const double sd = s.to_double(), dd = delta.to_double();
  auto term = [&spec, sd, dd](double t) {
    const double l = std::log1p(t);
    double weight = sd * std::pow(t, sd - 1.0) * std::pow(l, dd);
    if (dd != 0.0) weight += std::pow(t, sd) * dd * std::pow(l, dd - 1.0) / (1.0 + t);
    return weight * spec.tail(t);
  };
  return classify_partial_sums(term, J, "(t^s ln^d(1+t))' P(|X| > t), s=" + s.str() + ", d=" + delta.str(), options);
}

SeriesProbe truncmean_series_numeric(const DistributionSpec& spec, const Rational& q, int J,
                                     const ProbeOptions& options) {
  const double qd = q.to_double();
  auto term = [&spec, qd](double n) { return std::pow(std::abs(truncated_mean(spec, n)), qd) / n; };
  return classify_partial_sums(term, J, "|E X 1{|X| <= n}|^q / n, q=" + q.str(), options);
}

namespace {

Verdict from_probe(SeriesClass c) {
  switch (c) {
    case SeriesClass::Converges: return Verdict::Holds;
    case SeriesClass::Diverges: return Verdict::Fails;
    case SeriesClass::Inconclusive: return Verdict::Inconclusive;
  }
  return Verdict::Inconclusive;
}

Verdict from_convergence(Convergence c) {
  switch (c) {
    case Convergence::Converges: return Verdict::Holds;
    case Convergence::Diverges: return Verdict::Fails;
    case Convergence::Unknown: return Verdict::Inconclusive;
  }
  return Verdict::Inconclusive;
}

std::string describe(const SeriesProbe& probe) {
  std::ostringstream os;
  os << "probe J=" << probe.block_sums.size() - 1 << ": " << to_string(probe.classification) << " (mu=" << probe.mu
     << ", mu drift=" << probe.mu_drift << ", ratio=" << probe.ratio << ")";
  return os.str();
}

class Evaluator {
 public:
  Evaluator(const DistributionSpec& spec, const CriteriaOptions& options, CriterionReport& report)
      : spec_(spec), opt_(options), report_(report) {}

  void mean_zero() {
    ConditionVerdict cv;
    cv.name = "mean_zero";
    if (spec_.declared_mean) {
      cv.verdict = *spec_.declared_mean == 0.0 ? Verdict::Holds : Verdict::Fails;
      std::ostringstream os;
      os << "declared mean " << *spec_.declared_mean;
      cv.evidence = os.str();
    } else if (!spec_.abs_mean_finite) {
      cv.verdict = Verdict::Fails;
      cv.evidence = "E|X| = inf, so E X does not exist";
    } else {
      throw SpecError("spec '" + spec_.name + "' must declare its mean for this regime");
    }
    report_.conditions.push_back(std::move(cv));
  }

  void integral(const Rational& p, const Rational& q) {
    const int J = opt_.probe_blocks;
    decide("integral_condition", [&] { return bounded(); },
           [&]() -> std::optional<std::pair<Verdict, std::string>> {
             if (!spec_.tail_asym) return std::nullopt;
             const auto e = integral_condition_exponents(*spec_.tail_asym, p, q);
             const auto c = converges(e);
             return std::pair{from_convergence(c), "exponents " + e.str() + " -> " + std::string(to_string(c))};
           },
           Method::Symbolic, [&] { return integral_condition_numeric(spec_, p, q, J, opt_.probe); });
  }

  /// Returns the verdict so callers can gate conditions that need the moment.
  Verdict moment(const std::string& name, const Rational& s, const Rational& delta) {
    const int J = opt_.probe_blocks;
    decide(name, [&] { return bounded(); },
           [&]() -> std::optional<std::pair<Verdict, std::string>> {
             if (!spec_.tail_asym) return std::nullopt;
             const auto m = moment_finite(*spec_.tail_asym, s, delta);
             const auto& a = *spec_.tail_asym;
             return std::pair{m == Moment::Finite ? Verdict::Holds : Verdict::Fails,
                              "tail exponents " + a.exponents().str() + ", s=" + s.str() + ", delta=" +
                                  delta.str() + " -> " + std::string(to_string(m))};
           },
           Method::Symbolic, [&] { return moment_numeric(spec_, s, delta, J, opt_.probe); });
    return report_.conditions.back().verdict;
  }

  void qp_series(const Rational& p) {
    const int J = opt_.probe_blocks;
    decide("qp_series", [&] { return bounded(); },
           [&]() -> std::optional<std::pair<Verdict, std::string>> {
             if (!spec_.tail_asym) return std::nullopt;
             const auto c = qp_series_exponents(*spec_.tail_asym, p);
             return std::pair{from_convergence(c), "tail exponents " + spec_.tail_asym->exponents().str() +
                                                       ", p=" + p.str() + " -> " + std::string(to_string(c))};
           },
           Method::SymbolicDerived, [&] { return qp_series_numeric(spec_, p, J, opt_.probe); });
  }

  void truncmean(const Rational& q) {
    const int J = opt_.probe_blocks;
    decide("truncmean_series", [] { return std::optional<std::string>{}; },
           [&]() -> std::optional<std::pair<Verdict, std::string>> {
             const auto c = truncmean_series(spec_, q);
             if (c == Convergence::Unknown) return std::nullopt;
             std::string why;
             if (spec_.symmetric()) why = "symmetric law, all terms vanish";
             else if (spec_.support_bound && spec_.declares_zero_mean()) why = "bounded mean-zero law, terms vanish";
             else {
               const auto& t = *spec_.trunc_mean_asym;
               why = "terms ~ n^{-1} n^{-" + (q * t.power_exp).str() + "} (ln n)^{-" + (q * t.log_exp).str() +
                     "} (ln ln n)^{-" + (q * t.loglog_exp).str() + "}";
             }
             return std::pair{from_convergence(c), why + " -> " + std::string(to_string(c))};
           },
           Method::Symbolic, [&] { return truncmean_series_numeric(spec_, q, J, opt_.probe); });
  }

  void note(std::string text) { report_.notes.push_back(std::move(text)); }

 private:
  std::optional<std::string> bounded() const {
    if (!spec_.support_bound) return std::nullopt;
    std::ostringstream os;
    os << "|X| <= " << *spec_.support_bound << " almost surely";
    return os.str();
  }

  template <class Bounded, class Symbolic, class Numeric>
  void decide(const std::string& name, Bounded&& bounded_shortcut, Symbolic&& symbolic, Method symbolic_method,
              Numeric&& numeric) {
    ConditionVerdict cv;
    cv.name = name;
    if (auto why = bounded_shortcut()) {
      cv.verdict = Verdict::Holds;
      cv.method = Method::Symbolic;
      cv.evidence = *why;
    } else if (auto sym = symbolic()) {
      cv.verdict = sym->first;
      cv.method = symbolic_method;
      cv.evidence = sym->second;
      if (opt_.cross_check && spec_.tail) {
        cv.cross_check = numeric();
        const Verdict nv = from_probe(cv.cross_check->classification);
        if (nv != Verdict::Inconclusive && nv != cv.verdict) {
          note("numeric cross-check disagrees on " + name + ": " + describe(*cv.cross_check));
        }
      }
    } else {
      cv.probe = numeric();
      cv.verdict = from_probe(cv.probe->classification);
      cv.method = Method::Numeric;
      cv.evidence = describe(*cv.probe);
    }
    report_.conditions.push_back(std::move(cv));
  }

  const DistributionSpec& spec_;
  const CriteriaOptions& opt_;
  CriterionReport& report_;
};

void finish(CriterionReport& r) {
  bool any_fail = false, all_hold = true;
  for (const auto& c : r.conditions) {
    any_fail |= c.verdict == Verdict::Fails;
    all_hold &= c.verdict == Verdict::Holds;
  }
  const bool slln = r.target == Target::Slln;
  if (any_fail) r.overall = slln ? Overall::NotInSLLN : Overall::SeriesDiverges;
  else if (all_hold) r.overall = slln ? Overall::InSLLN : Overall::SeriesConverges;
  else r.overall = Overall::Inconclusive;
}

CriterionReport start(Target target, const Rational& p, const Rational& q) {
  CriterionReport r;
  r.target = target;
  r.p = p;
  r.q = q;
  r.regime = detect_regime(p, q);
  if (r.regime == Regime::Unsupported) {
    throw UnsupportedRegime("(p, q) = (" + p.str() + ", " + q.str() +
                            ") is outside 0 < p < 2, q >= 1; criteria for 0 < q < 1 are open problems");
  }
  return r;
}

}  // namespace

CriterionReport classify_slln(const DistributionSpec& spec, const Rational& p, const Rational& q,
                              const CriteriaOptions& options) {
  auto r = start(Target::Slln, p, q);
  Evaluator ev(spec, options, r);
  switch (r.regime) {
    case Regime::Q_LT_P:
      ev.mean_zero();
      ev.integral(p, q);
      break;
    case Regime::Q_EQ_P_GT1:
      ev.mean_zero();
      if (ev.moment("moment_p", p, Rational(0)) == Verdict::Fails) {
        ev.note("qp_series not evaluated: it is defined under E|X|^p < inf, which fails");
      } else {
        ev.qp_series(p);
      }
      break;
    case Regime::Q_GT_P_P_GT1:
      ev.mean_zero();
      ev.moment("moment_p", p, Rational(0));
      break;
    case Regime::P_EQ_Q_EQ_1:
      ev.mean_zero();
      if (!spec.abs_mean_finite) {
        ev.note("series conditions not evaluated: they need E|X| < inf");
        break;
      }
      ev.truncmean(q);
      ev.qp_series(p);
      break;
    case Regime::P1_Q_GT1:
      ev.mean_zero();
      if (!spec.abs_mean_finite) {
        ev.note("truncmean_series not evaluated: it needs E|X| < inf");
        break;
      }
      ev.truncmean(q);
      break;
    case Regime::P_LT1:
      ev.moment("moment_p", p, Rational(0));
      break;
    case Regime::Unsupported:
      break;
  }
  finish(r);
  return r;
}

CriterionReport classify_mean_series(const DistributionSpec& spec, const Rational& p, const Rational& q,
                                     const CriteriaOptions& options) {
  auto r = start(Target::MeanSeries, p, q);
  Evaluator ev(spec, options, r);
  switch (r.regime) {
    case Regime::Q_LT_P:
      ev.mean_zero();
      ev.integral(p, q);
      break;
    case Regime::Q_EQ_P_GT1:
    case Regime::P_EQ_Q_EQ_1:
      ev.mean_zero();
      ev.moment("moment_p_log", p, Rational(1));
      break;
    case Regime::Q_GT_P_P_GT1:
    case Regime::P1_Q_GT1:
      ev.mean_zero();
      ev.moment("moment_q", q, Rational(0));
      ev.note(
          "for q > p the moment condition is E|X|^q < inf; E|X|^p < inf alone is not enough, since E|X|^q = inf "
          "makes every term E(|S_n| / n^{1/p})^q infinite");
      break;
    case Regime::P_LT1:
      ev.moment("moment_q", q, Rational(0));
      break;
    case Regime::Unsupported:
      break;
  }
  finish(r);
  return r;
}

}  // namespace slln
