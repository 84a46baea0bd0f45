#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mrperf/tracelog.hpp"
#include "mrperf/types.hpp"

namespace mrperf {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One cell of the generic benchmark grid: an input size, a map selectivity
// and a block size.
struct BenchmarkPoint {
  megabytes input_mb = 0.0;
  double map_selectivity = 0.0;
  megabytes block_size_mb = 0.0;
  int repetitions = 1;
  std::int64_t seed = 0;
};

struct SweepConfig {
  megabytes input_mb_start = 512.0;
  megabytes input_mb_end = 5120.0;
  megabytes input_mb_step = 512.0;
  std::vector<double> map_selectivities = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<megabytes> block_sizes_mb = {64.0, 128.0};
  int repetitions = 1;
};

// Per-phase training data plus the provenance of every contributing job.
struct SampleSet {
  std::map<Phase, std::vector<PhaseSample>> by_phase;
  std::vector<std::pair<BenchmarkPoint, std::string>> provenance;

  std::size_t count(Phase p) const;
};

// Cartesian product of the sweep dimensions, ordered input size ascending,
// then selectivity, then block size. Each point's seed is derived from the
// master seed and the point's own coordinates, so growing the grid never
// perturbs existing points' draws.
std::vector<BenchmarkPoint> build_grid(const SweepConfig& config, std::int64_t seed);

// Reducer count used by the generic benchmark workload.
int generic_reducer_count(int total_mappers, int container_count);

// Simulates the generic benchmark at every grid point, round-trips each run
// through the log emitter/parser, and accumulates the extracted samples.
SampleSet run_profile(const ClusterProfile& cluster, const std::vector<BenchmarkPoint>& grid);

// One CSV per framework phase, header "features...,target_ms,job_id".
void write_sample_csvs(const SampleSet& samples, const std::string& dir);
SampleSet load_sample_csvs(const std::string& dir);
std::string phase_csv_filename(Phase p);

}  // namespace mrperf
