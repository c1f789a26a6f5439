#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hilbert/benchmarks.hpp"
#include "hilbert/conjecture.hpp"

namespace hilbert {

struct EmitFlags {
  bool csv = true;
  bool json = true;
  bool svg = true;
};

/// One experiment: a body, a map on it, a start point and run settings.
struct ExperimentConfig {
  std::string id;
  ConvexBody body;
  SemicontractionSpec map;
  Point start;
  ReportSettings settings;
  EmitFlags emit;
};

/// Parses a JSON experiment document. Schema problems raise ConfigInvalid;
/// bodies and maps that parse but cannot be built raise their own codes
/// (Unbounded, InvalidMap, ...).
ExperimentConfig parse_config(std::string_view json_text);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Body from a JSON document that is either a body object or an experiment
/// containing one under "body".
ConvexBody parse_body(std::string_view json_text);

ExperimentConfig config_from_benchmark(const Benchmark& bench, const ReportSettings& base = {});

/// `n,coord_0..coord_{N-1},displacement,from_start`, one row per point;
/// displacement is the step that produced the point (0 on row 0).
std::string orbit_csv(const Orbit& orbit);

std::string report_json(const ExperimentConfig& config, const LimitSetReport& report);

/// Body outline, orbit, clusters and star witness for bodies of intrinsic
/// dimension 2. Empty for other bodies.
std::string orbit_svg(const ConvexBody& body, const LimitSetReport& report);

}  // namespace hilbert
