#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace rgg {

inline constexpr const char* kVersion = "rgglab 1.0.0";

// Flat key-value experiment description. One experiment per file; a run is
// fully determined by the config bytes plus the tool version.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  std::string output_path;
  nlohmann::json raw;
};

struct ValidationIssue {
  std::string parameter;
  std::string message;
};

// Parses the flat JSON document. Malformed JSON or non-object input is a
// validation issue, not an exception: inspect the returned issues.
std::vector<ValidationIssue> validate_config(const std::string& text);

// Parse after validation; throws std::runtime_error when invalid.
ExperimentConfig parse_config(const std::string& text);

struct RunArtifacts {
  std::string csv_name, csv;
  std::string json_name, json;    // empty when the experiment has no summary
  std::string extra_name, extra;  // e.g. serialized graph batches
  std::string summary_line;
};

// Computes every output byte for the experiment. Thread count changes
// scheduling only, never bytes.
RunArtifacts run_experiment(const ExperimentConfig& cfg, int threads);

// Writes the artifacts under dir (creating it), returns the file paths.
std::vector<std::string> write_artifacts(const RunArtifacts& a, const std::string& dir);

}  // namespace rgg
