#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "paircat/config.hpp"

namespace paircat {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to reproduce a run, plus what the run actually used.
struct RunManifest {
  /// Canonical config text; re-parsing it reproduces the outputs exactly.
  std::string config_text;
  int n_max = 0;
  double tail_bound = 0.0;
  std::string tool_version = kToolVersion;
  double wall_seconds = 0.0;
  std::vector<std::string> notes;
};

struct RunOutput {
  ExperimentConfig config;
  std::optional<TimeSeries> series;
  std::optional<Raster> raster;
  RunManifest manifest;
};

struct SweepPoint {
  double value = 0.0;
  std::optional<RunOutput> output;
  /// Empty on success; otherwise the failure message and its exit-code family.
  std::string error;
  int error_code = 0;
};

namespace runner {

/// Scaled-time unit: lambda for constant and sinh profiles, 1 for piecewise.
double time_unit(const CouplingProfile& profile);

/// Runs one parameter point. A config that carries a sweep is rejected; use sweep().
RunOutput run(const ExperimentConfig& config, int threads = 1);

/// One run per sweep value, in config order. Failures are recorded per point.
/// A config without a sweep yields a single point identical to run(config).
std::vector<SweepPoint> sweep(const ExperimentConfig& config, int threads = 1);

/// Fixed column order, 17 significant digits, mandatory header.
void write_series_csv(std::ostream& out, const TimeSeries& series);

nlohmann::ordered_json manifest_json(const RunManifest& manifest);
nlohmann::ordered_json series_json(const TimeSeries& series, const RunManifest& manifest);

/// Recovers the exact config recorded in a manifest.
ExperimentConfig config_from_manifest(const nlohmann::json& manifest);

/// Human-readable state description used in raster headers.
std::string state_label(const ExperimentConfig& config);

}  // namespace runner
}  // namespace paircat
