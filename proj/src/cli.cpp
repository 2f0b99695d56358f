#include "slln/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slln/bertrand.hpp"
#include "slln/criteria.hpp"
#include "slln/inequalities.hpp"
#include "slln/montecarlo.hpp"
#include "slln/report.hpp"
#include "slln/tailmodel.hpp"

namespace slln {

namespace {

using nlohmann::json;

constexpr std::string_view kCorpusTable = R"(# spec target p q overall
ex4_1:p=8/5,r=5/4 slln 8/5 1 NotInSLLN
ex4_1:p=8/5,r=5/4 slln 8/5 32/25 NotInSLLN
ex4_1:p=8/5,r=5/4 slln 8/5 13/10 InSLLN
ex4_1:p=8/5,r=5/4 slln 8/5 3/2 InSLLN
ex4_1:p=8/5,r=5/4 slln 8/5 8/5 InSLLN
ex4_1:p=8/5,r=5/4 slln 8/5 2 InSLLN
ex4_1:p=8/5,r=5/4 slln 8/5 3 InSLLN
ex4_1:p=8/5,r=5/4 mean-series 8/5 1 SeriesDiverges
ex4_1:p=8/5,r=5/4 mean-series 8/5 32/25 SeriesDiverges
ex4_1:p=8/5,r=5/4 mean-series 8/5 13/10 SeriesConverges
ex4_1:p=8/5,r=5/4 mean-series 8/5 3/2 SeriesConverges
ex4_1:p=8/5,r=5/4 mean-series 8/5 8/5 SeriesDiverges
ex4_1:p=8/5,r=5/4 mean-series 8/5 2 SeriesDiverges
ex4_1:p=8/5,r=5/4 mean-series 8/5 3 SeriesDiverges
ex4_1:p=3/2,r=6/5 slln 3/2 1 NotInSLLN
ex4_1:p=3/2,r=6/5 slln 3/2 5/4 NotInSLLN
ex4_1:p=3/2,r=6/5 slln 3/2 4/3 InSLLN
ex4_1:p=3/2,r=6/5 slln 3/2 3/2 InSLLN
ex4_1:p=3/2,r=6/5 slln 3/2 2 InSLLN
ex4_1:p=3/2,r=6/5 mean-series 3/2 1 SeriesDiverges
ex4_1:p=3/2,r=6/5 mean-series 3/2 5/4 SeriesDiverges
ex4_1:p=3/2,r=6/5 mean-series 3/2 4/3 SeriesConverges
ex4_1:p=3/2,r=6/5 mean-series 3/2 3/2 SeriesDiverges
ex4_1:p=3/2,r=6/5 mean-series 3/2 2 SeriesDiverges
ex4_2:p=3/2 slln 3/2 1 NotInSLLN
ex4_2:p=3/2 slln 3/2 5/4 NotInSLLN
ex4_2:p=3/2 slln 3/2 3/2 NotInSLLN
ex4_2:p=3/2 slln 3/2 2 InSLLN
ex4_2:p=7/4 slln 7/4 1 NotInSLLN
ex4_2:p=7/4 slln 7/4 3/2 NotInSLLN
ex4_2:p=7/4 slln 7/4 7/4 NotInSLLN
ex4_2:p=7/4 slln 7/4 3 InSLLN
ex4_3 slln 1 3/2 NotInSLLN
ex4_3 slln 1 2 NotInSLLN
ex4_3 slln 1 3 NotInSLLN
)";

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

int exit_code(Overall o) {
  switch (o) {
    case Overall::InSLLN:
    case Overall::SeriesConverges: return 0;
    case Overall::NotInSLLN:
    case Overall::SeriesDiverges: return 1;
    case Overall::Inconclusive: return 2;
  }
  return 2;
}

int exit_code(SeriesClass c) {
  switch (c) {
    case SeriesClass::Converges: return 0;
    case SeriesClass::Diverges: return 1;
    case SeriesClass::Inconclusive: return 2;
  }
  return 2;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

RunManifest make_manifest(std::string command, std::string spec, std::string p, std::string q,
                          std::optional<std::uint64_t> seed, const std::string& config) {
  RunManifest m;
  m.command = std::move(command);
  m.spec = std::move(spec);
  m.p = std::move(p);
  m.q = std::move(q);
  m.seed = seed;
  m.config_digest = hex64(fnv1a64(config));
  m.wall_clock = utc_timestamp();
  return m;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << content;
  f.close();
  if (!f) throw IoError("write to " + path + " failed");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  err << "seed: " << s << '\n';
  return s;
}

// ---- classify ----

struct ClassifyArgs {
  std::string spec, p, q, target = "slln", out, format = "json";
  bool cross_check = false;
  int blocks = 24;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  const auto spec = parse_spec(a.spec);
  const auto p = parse_rational("p", a.p), q = parse_rational("q", a.q);
  CriteriaOptions opts;
  opts.cross_check = a.cross_check;
  opts.probe_blocks = a.blocks;
  const auto report =
      a.target == "slln" ? classify_slln(spec, p, q, opts) : classify_mean_series(spec, p, q, opts);
  const std::string config = "classify|" + spec.name + "|" + p.str() + "|" + q.str() + "|" + a.target + "|" +
                             (a.cross_check ? "1" : "0") + "|" + std::to_string(a.blocks);
  const auto manifest = make_manifest("classify", a.spec, p.str(), q.str(), std::nullopt, config);
  if (a.format == "csv") {
    std::ostringstream os;
    os << "name,verdict,method,evidence\n";
    for (const auto& c : report.conditions) {
      os << csv_field(c.name) << ',' << to_string(c.verdict) << ',' << to_string(c.method) << ','
         << csv_field(c.evidence) << '\n';
    }
    os << "overall," << to_string(report.overall) << ",,\n";
    emit(os.str(), a.out, out);
  } else {
    json j = to_json(report);
    j["manifest"] = to_json(manifest);
    emit(j.dump(2) + "\n", a.out, out);
  }
  return exit_code(report.overall);
}

// ---- simulate ----

struct SimulateArgs {
  std::string spec, p, q, out, format = "csv";
  std::uint64_t nmax = std::uint64_t{1} << 16;
  long long reps = 512;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const auto spec = parse_spec(a.spec);
  if (a.reps < 1) throw UsageError("--reps must be at least 1");
  SimConfig cfg;
  cfg.p = parse_rational("p", a.p);
  cfg.q = parse_rational("q", a.q);
  cfg.n_max = a.nmax;
  cfg.reps = static_cast<std::size_t>(a.reps);
  cfg.workers = a.workers;
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.master_seed = resolve_seed(a.seed, err);
  // Worker count is excluded: it never changes results.
  const std::string config = "simulate|" + spec.name + "|" + cfg.p.str() + "|" + cfg.q.str() + "|" +
                             std::to_string(cfg.master_seed) + "|" + std::to_string(cfg.n_max) + "|" +
                             std::to_string(cfg.reps);
  const auto manifest = make_manifest("simulate", a.spec, cfg.p.str(), cfg.q.str(), cfg.master_seed, config);
  const auto result = simulate_weighted_series(spec, cfg);
  json stats = to_json(result);
  stats["manifest"] = to_json(manifest);
  std::ostringstream csv;
  write_trajectories_csv(result, csv);
  if (!a.out.empty()) {
    write_file(a.out, csv.str());
    write_file(a.out + ".json", stats.dump(2) + "\n");
  } else if (a.format == "json") {
    out << stats.dump(2) << '\n';
  } else {
    out << csv.str();
  }
  return 0;
}

// ---- probe-series ----

struct ProbeArgs {
  std::string alpha, beta = "0", gamma = "0";
  std::string spec, p, q, condition = "qp_series", s, delta = "0";
  int blocks = 24;
  std::string out;
};

int cmd_probe(const ProbeArgs& a, std::ostream& out) {
  json j;
  SeriesProbe probe;
  std::string config;
  if (!a.alpha.empty()) {
    if (!a.spec.empty()) throw UsageError("--alpha and --spec are mutually exclusive");
    const LogPowerExponents e{parse_rational("alpha", a.alpha), parse_rational("beta", a.beta),
                              parse_rational("gamma", a.gamma)};
    probe = classify_partial_sums(bertrand_term(e), a.blocks, "bertrand " + e.str());
    j["series"] = "bertrand";
    j["exponents"] = e.str();
    j["symbolic"] = to_string(converges(e));
    config = "probe|bertrand|" + e.str();
  } else {
    if (a.spec.empty()) throw UsageError("probe-series needs --alpha or --spec");
    const auto spec = parse_spec(a.spec);
    if (a.p.empty()) throw UsageError("--p is required with --spec");
    const auto p = parse_rational("p", a.p);
    if (a.condition == "qp_series") {
      probe = qp_series_numeric(spec, p, a.blocks);
    } else if (a.condition == "integral_condition") {
      if (a.q.empty()) throw UsageError("--q is required for integral_condition");
      probe = integral_condition_numeric(spec, p, parse_rational("q", a.q), a.blocks);
    } else if (a.condition == "truncmean_series") {
      if (a.q.empty()) throw UsageError("--q is required for truncmean_series");
      probe = truncmean_series_numeric(spec, parse_rational("q", a.q), a.blocks);
    } else {
      const auto s = a.s.empty() ? p : parse_rational("s", a.s);
      probe = moment_numeric(spec, s, parse_rational("delta", a.delta), a.blocks);
    }
    j["series"] = a.condition;
    j["spec"] = spec.name;
    config = "probe|" + a.condition + "|" + spec.name + "|" + a.p + "|" + a.q + "|" + a.s + "|" + a.delta;
  }
  config += "|" + std::to_string(a.blocks);
  j["blocks"] = a.blocks;
  j["probe"] = to_json(probe);
  j["manifest"] = to_json(make_manifest("probe-series", a.spec, a.p, a.q, std::nullopt, config));
  emit(j.dump(2) + "\n", a.out, out);
  return exit_code(probe.classification);
}

// ---- inequality-check ----

struct InequalityArgs {
  std::string spec, check = "marcus-pisier", s, q = "1", out;
  std::size_t n = 64, N = 1024, trials = 10000;
  std::vector<double> u;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
};

int cmd_inequality(const InequalityArgs& a, std::ostream& out, std::ostream& err) {
  const auto spec = parse_spec(a.spec);
  const std::uint64_t seed = resolve_seed(a.seed, err);
  BoundCheckResult r;
  json j;
  std::string config = "inequality|" + a.check + "|" + spec.name + "|" + std::to_string(seed) + "|" +
                       std::to_string(a.trials);
  std::string q_text;
  if (a.check == "marcus-pisier") {
    Rational s;
    if (!a.s.empty()) {
      s = parse_rational("s", a.s);
    } else if (spec.tail_asym) {
      s = spec.tail_asym->alpha;
    } else {
      throw UsageError("--s is required when the law has no tail index");
    }
    r = marcus_pisier_check(spec, a.n, s, a.u, a.trials, seed, a.workers);
    config += "|" + s.str() + "|" + std::to_string(a.n);
    for (double u : a.u) config += "|" + std::to_string(u);
  } else {
    const auto q = parse_rational("q", a.q);
    q_text = q.str();
    config += "|" + q.str() + "|" + std::to_string(a.N);
    if (a.check == "hj-series") {
      r = hj_series_check(spec, q, a.N, a.trials, seed, a.workers);
    } else {
      const auto smoke = hj_t0_smoke(spec, q, a.N, a.trials, seed, a.workers);
      r = smoke.bounds;
      j["t0"] = smoke.t0;
      j["alpha"] = smoke.alpha;
      j["beta"] = smoke.beta;
    }
  }
  j["result"] = to_json(r);
  j["manifest"] = to_json(make_manifest("inequality-check", a.spec, "", q_text, seed, config));
  emit(j.dump(2) + "\n", a.out, out);
  if (r.rhs_infinite) return 2;
  return r.violations == 0 ? 0 : 1;
}

// ---- corpus ----

struct CorpusRow {
  std::string spec, target, p, q, expected;
};

std::vector<CorpusRow> parse_table(std::string_view text) {
  std::vector<CorpusRow> rows;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    CorpusRow r;
    if (!(ls >> r.spec)) continue;
    std::string extra;
    if (!(ls >> r.target >> r.p >> r.q >> r.expected) || (ls >> extra)) {
      throw UsageError("expected table line " + std::to_string(lineno) + ": want 5 fields");
    }
    if (r.target != "slln" && r.target != "mean-series") {
      throw UsageError("expected table line " + std::to_string(lineno) + ": unknown target " + r.target);
    }
    rows.push_back(r);
  }
  return rows;
}

struct CorpusArgs {
  std::string expected, out, format = "json";
};

int cmd_corpus(const CorpusArgs& a, std::ostream& out, std::ostream& err) {
  std::string table(kCorpusTable);
  if (!a.expected.empty()) {
    std::ifstream f(a.expected);
    if (!f) throw IoError("cannot read " + a.expected);
    std::ostringstream ss;
    ss << f.rdbuf();
    table = ss.str();
  }
  const auto rows = parse_table(table);
  json cells = json::array();
  std::ostringstream csv;
  csv << "spec,target,p,q,expected,actual,match\n";
  int mismatches = 0;
  for (const auto& row : rows) {
    const auto spec = parse_spec(row.spec);
    const auto p = parse_rational("p", row.p), q = parse_rational("q", row.q);
    const auto report = row.target == "slln" ? classify_slln(spec, p, q) : classify_mean_series(spec, p, q);
    const std::string actual(to_string(report.overall));
    const bool match = actual == row.expected;
    if (!match) {
      ++mismatches;
      err << "mismatch: " << row.spec << ' ' << row.target << " p=" << row.p << " q=" << row.q
          << " expected " << row.expected << " got " << actual << '\n';
    }
    cells.push_back(json{{"spec", row.spec},
                         {"target", row.target},
                         {"p", p.str()},
                         {"q", q.str()},
                         {"expected", row.expected},
                         {"actual", actual},
                         {"match", match}});
    csv << csv_field(row.spec) << ',' << row.target << ',' << p.str() << ',' << q.str() << ',' << row.expected
        << ',' << actual << ',' << (match ? "true" : "false") << '\n';
  }
  if (a.format == "csv") {
    emit(csv.str(), a.out, out);
  } else {
    json j{{"cells", std::move(cells)}, {"mismatches", mismatches}};
    j["manifest"] = to_json(make_manifest("corpus", "", "", "", std::nullopt, "corpus|" + table));
    emit(j.dump(2) + "\n", a.out, out);
  }
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

std::string_view builtin_corpus_table() { return kCorpusTable; }

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Criteria, simulation and inequality checks for (p, q)-type strong laws", "slln"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kVersion));

  const std::vector<std::string> formats{"json", "csv"};
  std::string json_only = "json";

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Decide SLLN(p, q) or the mean series for a law");
  classify->add_option("--spec", ca.spec, "Law, e.g. ex4_1:p=8/5,r=5/4")->required();
  classify->add_option("--p", ca.p, "Rational p")->required();
  classify->add_option("--q", ca.q, "Rational q")->required();
  classify->add_option("--target", ca.target)->check(CLI::IsMember({"slln", "mean-series"}));
  classify->add_flag("--cross-check", ca.cross_check, "Also run numeric probes next to symbolic verdicts");
  classify->add_option("--blocks", ca.blocks, "Dyadic blocks for numeric probes")->check(CLI::Range(16, 1000));
  classify->add_option("--out", ca.out);
  classify->add_option("--format", ca.format)->check(CLI::IsMember(formats));

  SimulateArgs sa;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo trajectories of the weighted series");
  simulate->add_option("--spec", sa.spec)->required();
  simulate->add_option("--p", sa.p)->required();
  simulate->add_option("--q", sa.q)->required();
  simulate->add_option("--nmax", sa.nmax, "Power of two");
  simulate->add_option("--reps", sa.reps);
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed);
  simulate->add_option("--workers", sa.workers);
  simulate->add_option("--out", sa.out, "CSV path; statistics go to <out>.json");
  simulate->add_option("--format", sa.format)->check(CLI::IsMember(formats));

  ProbeArgs pa;
  auto* probe = app.add_subcommand("probe-series", "Numeric block-sum probe of a series");
  probe->add_option("--alpha", pa.alpha, "Bertrand exponent of n");
  probe->add_option("--beta", pa.beta, "Bertrand exponent of ln n");
  probe->add_option("--gamma", pa.gamma, "Bertrand exponent of ln ln n");
  probe->add_option("--spec", pa.spec);
  probe->add_option("--p", pa.p);
  probe->add_option("--q", pa.q);
  probe->add_option("--condition", pa.condition)
      ->check(CLI::IsMember({"qp_series", "integral_condition", "truncmean_series", "moment"}));
  probe->add_option("--s", pa.s, "Moment order (default p)");
  probe->add_option("--delta", pa.delta, "Log power of the moment");
  probe->add_option("--blocks", pa.blocks)->check(CLI::Range(16, 1000));
  probe->add_option("--out", pa.out);
  probe->add_option("--format", json_only)->check(CLI::IsMember({"json"}));

  InequalityArgs ia;
  std::uint64_t ineq_seed = 0;
  auto* ineq = app.add_subcommand("inequality-check", "Empirical check of the weak-norm and series inequalities");
  ineq->add_option("--spec", ia.spec)->required();
  ineq->add_option("--check", ia.check)->check(CLI::IsMember({"marcus-pisier", "hj-series", "t0-smoke"}));
  ineq->add_option("--s", ia.s, "Weak-norm order (default: tail index)");
  ineq->add_option("--q", ia.q);
  ineq->add_option("--n", ia.n)->check(CLI::PositiveNumber);
  ineq->add_option("--N", ia.N)->check(CLI::PositiveNumber);
  ineq->add_option("--trials", ia.trials)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  ineq->add_option("--u", ia.u, "u values (default: quantile grid)");
  auto* ineq_seed_opt = ineq->add_option("--seed", ineq_seed);
  ineq->add_option("--workers", ia.workers);
  ineq->add_option("--out", ia.out);
  ineq->add_option("--format", json_only)->check(CLI::IsMember({"json"}));

  CorpusArgs co;
  auto* corpus = app.add_subcommand("corpus", "Classify the built-in examples and diff against expected verdicts");
  corpus->add_option("--expected", co.expected, "Table file: spec target p q overall per line");
  corpus->add_option("--out", co.out);
  corpus->add_option("--format", co.format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }
  if (*sim_seed_opt) sa.seed = sim_seed;
  if (*ineq_seed_opt) ia.seed = ineq_seed;

  try {
    if (*classify) return cmd_classify(ca, out);
    if (*simulate) return cmd_simulate(sa, out, err);
    if (*probe) return cmd_probe(pa, out);
    if (*ineq) return cmd_inequality(ia, out, err);
    return cmd_corpus(co, out, err);
  } catch (const UnsupportedRegime& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace slln
