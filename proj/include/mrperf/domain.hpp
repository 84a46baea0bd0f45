#pragma once

#include "mrperf/types.hpp"

namespace mrperf {

// Number of scheduling rounds needed to run task_count tasks on
// container_count concurrent containers. Tasks are indivisible, so the
// ratio is taken with a ceiling.
int wave_count(long task_count, int container_count);

// Pure derivation of the whole-job data-volume and wave quantities from a
// workload shape and a cluster. A reducer_count of 0 yields a map-only job:
// shuffle/reduce features are zero and map_only is set.
DerivedFeatures derive_features(const WorkloadSpec& workload, const ClusterProfile& cluster);

}  // namespace mrperf
