#include "slln/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace slln {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json to_json(const RunManifest& m) {
  json j{{"command", m.command}, {"spec", m.spec},   {"p", m.p},
         {"q", m.q},             {"seed", nullptr}, {"config_digest", m.config_digest},
         {"version", m.version}, {"wall_clock", m.wall_clock}};
  if (m.seed) j["seed"] = *m.seed;
  return j;
}

json to_json(const SeriesProbe& probe) {
  return json{{"term_rule", probe.term_rule},
              {"classification", to_string(probe.classification)},
              {"mu", probe.mu},
              {"mu_drift", probe.mu_drift},
              {"lambda", probe.lambda},
              {"log_slope", probe.log_slope},
              {"ratio", probe.ratio},
              {"block_sums", probe.block_sums}};
}

json to_json(const CriterionReport& report) {
  json conditions = json::array();
  for (const auto& c : report.conditions) {
    json cj{{"name", c.name},
            {"verdict", to_string(c.verdict)},
            {"method", to_string(c.method)},
            {"evidence", c.evidence}};
    if (c.probe) cj["probe"] = to_json(*c.probe);
    if (c.cross_check) cj["cross_check"] = to_json(*c.cross_check);
    conditions.push_back(std::move(cj));
  }
  return json{{"target", to_string(report.target)},
              {"p", report.p.str()},
              {"q", report.q.str()},
              {"regime", to_string(report.regime)},
              {"conditions", std::move(conditions)},
              {"overall", to_string(report.overall)},
              {"notes", report.notes}};
}

json to_json(const CheckpointStats& s) {
  return json{{"n", s.n}, {"mean", s.mean}, {"median", s.median}, {"q05", s.q05}, {"q95", s.q95}};
}

json to_json(const SimResult& result) {
  json cps = json::array();
  for (std::size_t k = 0; k < result.checkpoints.size(); ++k) {
    cps.push_back(json{{"n", result.checkpoints[k]}, {"T", to_json(result.t_stats[k])}, {"M", to_json(result.m_stats[k])}});
  }
  return json{{"reps", result.T.size()},
              {"checkpoints", std::move(cps)},
              {"overflowed", result.overflowed},
              {"seeds", result.seeds}};
}

json to_json(const BoundCheckResult& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  json points = json::array();
  for (const auto& pt : r.points) {
    points.push_back(json{{"kind", pt.kind},
                          {"param", pt.param},
                          {"lhs", pt.lhs},
                          {"rhs", pt.rhs},
                          {"slack", pt.slack},
                          {"violated", pt.violated}});
  }
  return json{{"inequality", r.inequality}, {"trials", r.trials},           {"violations", r.violations},
              {"max_ratio", r.max_ratio},   {"rhs_infinite", r.rhs_infinite}, {"note", r.note},
              {"params", std::move(params)}, {"points", std::move(points)}};
}

}  // namespace slln
