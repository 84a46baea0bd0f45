#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mrperf/domain.hpp"
#include "mrperf/rng.hpp"
#include "mrperf/types.hpp"

namespace mrperf {

struct TaskTrace {
  std::string task_id;
  TaskKind kind = TaskKind::Map;
  int wave_index = 0;
  std::map<Phase, milliseconds> phase_ms;
  megabytes input_mb = 0.0;
  megabytes output_mb = 0.0;
  int spill_file_count = 0;  // map tasks only

  milliseconds total_ms() const;
};

struct JobTrace {
  std::string job_id;
  WorkloadSpec workload;
  int container_count = 0;
  megabytes block_size_mb = 0.0;
  std::vector<TaskTrace> tasks;
  milliseconds total_ms = 0.0;
  std::int64_t seed = 0;

  int map_task_count() const;
  int reduce_task_count() const;
};

// Per-task custom map/reduce approximation: (sum of per-unit times divided
// by the task count) divided by the container count.
milliseconds custom_phase_time(double total_records_or_keys, double ms_per_unit,
                               int task_count, int container_count);

// Ground-truth linear cost of one framework phase on one task's data share.
// `volume_mb` is the task's input/map-output/shuffle-input/write-output
// volume depending on the phase; `total_mappers` is used by SHUFFLE only.
milliseconds phase_ground_truth(Phase phase, megabytes volume_mb, int total_mappers,
                                const GroundTruthCoefficients& coeffs);

// Spill files created by a map task emitting m_task megabytes.
int spill_file_count(megabytes m_task, const ClusterProfile& cluster);

// Runs one MapReduce job on the simulated FIFO cluster: M_t map tasks in
// ceil(M_t/N_c) waves, a full barrier, then R_t reduce tasks in
// ceil(R_t/N_c) waves. Each phase duration is the ground-truth cost scaled
// by an independent noise factor max(0, 1 + noise_sigma * g). Identical
// (cluster, workload, seed) triples yield bit-identical traces.
JobTrace simulate_job(const ClusterProfile& cluster, const WorkloadSpec& workload,
                      std::int64_t seed);

}  // namespace mrperf
