#include "mrperf/domain.hpp"

#include <cmath>

namespace mrperf {

int wave_count(long task_count, int container_count) {
  if (container_count < 1) throw InvalidInput("invalid cluster: container_count must be >= 1");
  if (task_count < 0) throw InvalidInput("task_count must be >= 0");
  return static_cast<int>((task_count + container_count - 1) / container_count);
}

DerivedFeatures derive_features(const WorkloadSpec& workload, const ClusterProfile& cluster) {
  workload.validate();
  cluster.validate();

  DerivedFeatures f;
  f.total_mappers =
      static_cast<int>(std::ceil(workload.input_mb / cluster.block_size_mb));
  f.map_output_mb = workload.input_mb * workload.map_selectivity;
  f.map_waves = wave_count(f.total_mappers, cluster.container_count);

  if (workload.reducer_count >= 1) {
    f.shuffle_per_reducer_mb = f.map_output_mb / workload.reducer_count;
    f.reduce_output_mb = f.map_output_mb * workload.reduce_selectivity;
    f.reduce_waves = wave_count(workload.reducer_count, cluster.container_count);
  } else {
    // Map-only job: reduce-side features are zero by definition.
    f.map_only = true;
    f.shuffle_per_reducer_mb = 0.0;
    f.reduce_output_mb = 0.0;
    f.reduce_waves = 0;
  }
  return f;
}

}  // namespace mrperf
