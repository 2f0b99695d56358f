#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "slln/criteria.hpp"
#include "slln/inequalities.hpp"
#include "slln/montecarlo.hpp"
#include "slln/series_probe.hpp"

namespace slln {

inline constexpr std::string_view kVersion = "0.1.0";

/// Provenance block embedded in every report. Two runs with equal manifests
/// (apart from wall_clock) produce identical outputs.
struct RunManifest {
  std::string command;
  std::string spec;
  std::string p;
  std::string q;
  std::optional<std::uint64_t> seed;
  /// FNV-1a of the canonical configuration text, 16 hex digits.
  std::string config_digest;
  std::string version{kVersion};
  /// UTC, ISO 8601.
  std::string wall_clock;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);
std::string utc_timestamp();

nlohmann::json to_json(const RunManifest& m);
nlohmann::json to_json(const SeriesProbe& probe);
nlohmann::json to_json(const CriterionReport& report);
nlohmann::json to_json(const CheckpointStats& stats);
/// Checkpoint statistics, overflow flags and seeds; trajectories go to CSV.
nlohmann::json to_json(const SimResult& result);
nlohmann::json to_json(const BoundCheckResult& result);

}  // namespace slln
