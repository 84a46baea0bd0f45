#pragma once

#include <string>
#include <vector>

#include "mrperf/benchsuite.hpp"
#include "mrperf/models.hpp"
#include "mrperf/predictor.hpp"
#include "mrperf/profiler.hpp"
#include "mrperf/types.hpp"

namespace mrperf {

struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Provenance record written alongside every CLI output; re-running the
// stored argv reproduces the outputs byte for byte.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::int64_t seed = 0;
  std::string output_dir;
  std::string tool_version;
  std::vector<std::string> argv;
};

// JSON documents use exactly the snake_case field names of the owning
// types; unknown fields are rejected, missing fields take defaults.
std::string cluster_to_json(const ClusterProfile& cluster);
ClusterProfile cluster_from_json(const std::string& text);

std::string workload_to_json(const WorkloadSpec& workload);
WorkloadSpec workload_from_json(const std::string& text);

std::string sweep_to_json(const SweepConfig& config);
SweepConfig sweep_from_json(const std::string& text);

std::string models_to_json(const PhaseModelSet& models);
PhaseModelSet models_from_json(const std::string& text);

std::string suite_to_json(const std::vector<SuiteEntry>& suite);
std::vector<SuiteEntry> suite_from_json(const std::string& text);

std::string prediction_to_json(const JobPrediction& prediction);

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mrperf
