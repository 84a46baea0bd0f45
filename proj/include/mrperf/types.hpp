#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mrperf {

// Units discipline: every data volume in the toolkit is megabytes, every
// duration is milliseconds. The aliases keep signatures readable.
using megabytes = double;
using milliseconds = double;

constexpr double kBytesPerMb = 1024.0 * 1024.0;

enum class Phase : int {
  Read = 0,
  Map,
  Collect,
  Spill,
  Merge,
  Shuffle,
  Reduce,
  Write,
};

constexpr std::array<Phase, 5> kMapPhases = {Phase::Read, Phase::Map, Phase::Collect,
                                             Phase::Spill, Phase::Merge};
constexpr std::array<Phase, 3> kReducePhases = {Phase::Shuffle, Phase::Reduce, Phase::Write};
// The six framework-defined phases (custom MAP/REDUCE excluded).
constexpr std::array<Phase, 6> kFrameworkPhases = {Phase::Read,  Phase::Collect, Phase::Spill,
                                                   Phase::Merge, Phase::Shuffle, Phase::Write};

const char* phase_name(Phase p);
Phase phase_from_name(const std::string& name);

enum class TaskKind { Map, Reduce };

enum class Scheduler { Fifo };

enum class DesignPattern { Summarisation, Filtering, DataOrganisation, Join, Generic };

const char* pattern_name(DesignPattern p);
DesignPattern pattern_from_name(const std::string& name);

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear per-phase cost coefficients used as the simulator's hidden ground
// truth. Defaults are the fitted cluster coefficients the predictor is
// validated against.
struct GroundTruthCoefficients {
  double read_slope = 0.01;
  double read_intercept = 1.33;
  double collect_slope = 0.01;
  double collect_intercept = 0.97;
  double spill_slope = 0.02;
  double spill_intercept = 0.98;
  double merge_slope = 0.002;  // applies to m*ln(m)
  double merge_intercept = 4.80;
  double shuffle_slope_data = 10.45;
  double shuffle_slope_mappers = 579.48;
  double shuffle_intercept = 6144.6;
  double write_slope = 6.94;
  double write_intercept = 2139.98;

  void validate() const;
};

struct ClusterProfile {
  int container_count = 8;
  megabytes block_size_mb = 128.0;
  Scheduler scheduler = Scheduler::Fifo;
  GroundTruthCoefficients ground_truth;
  double noise_sigma = 0.05;       // 0 => fully deterministic simulation
  megabytes spill_buffer_mb = 100.0;
  double spill_threshold = 0.80;   // fraction of the buffer that triggers a spill
  int record_size_bytes = 100;

  megabytes spill_trigger_mb() const { return spill_buffer_mb * spill_threshold; }
  void validate() const;
};

bool block_size_supported(megabytes block_mb);

struct WorkloadSpec {
  std::string name;
  megabytes input_mb = 0.0;          // D
  double map_selectivity = 0.0;      // M_sel, fraction in [0,1]
  double reduce_selectivity = 0.0;   // R_sel
  int reducer_count = 0;             // R_t; 0 = map-only job
  double map_ms_per_record = 0.0;
  double reduce_ms_per_key = 0.0;
  double keys_per_mb = 1.0;
  DesignPattern design_pattern = DesignPattern::Generic;

  void validate() const;
};

struct DerivedFeatures {
  int total_mappers = 0;               // M_t
  megabytes map_output_mb = 0.0;       // M_d, whole-job map output
  megabytes shuffle_per_reducer_mb = 0.0;  // S_d
  megabytes reduce_output_mb = 0.0;    // R_d
  int map_waves = 0;
  int reduce_waves = 0;
  bool map_only = false;  // diagnostic: reducer_count == 0
};

}  // namespace mrperf
