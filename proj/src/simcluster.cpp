#include "mrperf/simcluster.hpp"

#include "mrperf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace mrperf {

milliseconds TaskTrace::total_ms() const {
  milliseconds t = 0.0;
  for (const auto& [phase, ms] : phase_ms) t += ms;
  return t;
}

int JobTrace::map_task_count() const {
  return static_cast<int>(
      std::count_if(tasks.begin(), tasks.end(),
                    [](const TaskTrace& t) { return t.kind == TaskKind::Map; }));
}

int JobTrace::reduce_task_count() const {
  return static_cast<int>(tasks.size()) - map_task_count();
}

milliseconds custom_phase_time(double total_records_or_keys, double ms_per_unit,
                               int task_count, int container_count) {
  if (task_count < 1) throw InvalidInput("custom_phase_time: task_count must be >= 1");
  if (container_count < 1) throw InvalidInput("custom_phase_time: container_count must be >= 1");
  return (total_records_or_keys * ms_per_unit / task_count) / container_count;
}

milliseconds phase_ground_truth(Phase phase, megabytes volume_mb, int total_mappers,
                                const GroundTruthCoefficients& c) {
  switch (phase) {
    case Phase::Read:
      return c.read_slope * volume_mb + c.read_intercept;
    case Phase::Collect:
      return c.collect_slope * volume_mb + c.collect_intercept;
    case Phase::Spill:
      return c.spill_slope * volume_mb + c.spill_intercept;
    case Phase::Merge: {
      const double nlogn = volume_mb > 0.0 ? std::max(volume_mb * std::log(volume_mb), 0.0) : 0.0;
      return c.merge_slope * nlogn + c.merge_intercept;
    }
    case Phase::Shuffle:
      return c.shuffle_slope_data * volume_mb + c.shuffle_slope_mappers * total_mappers +
             c.shuffle_intercept;
    case Phase::Write:
      return c.write_slope * volume_mb + c.write_intercept;
    default:
      throw InvalidInput(std::string("phase_ground_truth: no framework model for phase ") +
                         phase_name(phase));
  }
}

int spill_file_count(megabytes m_task, const ClusterProfile& cluster) {
  if (m_task <= 0.0) return 0;
  return std::max(1, static_cast<int>(std::ceil(m_task / cluster.spill_trigger_mb())));
}

namespace {

double noise_factor(const ClusterProfile& cluster, std::int64_t seed, int task_index,
                    Phase phase) {
  if (cluster.noise_sigma == 0.0) return 1.0;
  const std::uint64_t k =
      rng::key(static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(task_index),
               static_cast<std::uint64_t>(static_cast<int>(phase)));
  return std::max(0.0, 1.0 + cluster.noise_sigma * rng::standard_normal(k));
}

std::string sanitize_id(std::string s) {
  for (char& ch : s) {
    if (ch == ' ' || ch == '\t') ch = '_';
  }
  return s.empty() ? std::string("job") : s;
}

}  // namespace

JobTrace simulate_job(const ClusterProfile& cluster, const WorkloadSpec& workload,
                      std::int64_t seed) {
  const DerivedFeatures f = derive_features(workload, cluster);
  const int n_c = cluster.container_count;

  JobTrace trace;
  trace.job_id = sanitize_id(workload.name);
  trace.workload = workload;
  trace.container_count = n_c;
  trace.block_size_mb = cluster.block_size_mb;
  trace.seed = seed;
  trace.tasks.reserve(static_cast<std::size_t>(f.total_mappers) + workload.reducer_count);

  const double total_records = workload.input_mb * kBytesPerMb / cluster.record_size_bytes;
  const milliseconds map_custom = custom_phase_time(total_records, workload.map_ms_per_record,
                                                    f.total_mappers, n_c);

  for (int i = 0; i < f.total_mappers; ++i) {
    TaskTrace t;
    t.task_id = fmt::format("map_{:05d}", i);
    t.kind = TaskKind::Map;
    t.wave_index = i / n_c;
    // Every map task reads a full block except the last, which takes the
    // remainder of the input.
    const bool last = (i == f.total_mappers - 1);
    const megabytes d = last ? workload.input_mb - (f.total_mappers - 1) * cluster.block_size_mb
                             : cluster.block_size_mb;
    const megabytes m = d * workload.map_selectivity;
    t.input_mb = d;
    t.output_mb = m;
    t.spill_file_count = spill_file_count(m, cluster);

    const auto gt = [&](Phase p, megabytes v) {
      return phase_ground_truth(p, v, f.total_mappers, cluster.ground_truth);
    };
    t.phase_ms[Phase::Read] = gt(Phase::Read, d) * noise_factor(cluster, seed, i, Phase::Read);
    t.phase_ms[Phase::Map] = map_custom * noise_factor(cluster, seed, i, Phase::Map);
    t.phase_ms[Phase::Collect] =
        gt(Phase::Collect, m) * noise_factor(cluster, seed, i, Phase::Collect);
    t.phase_ms[Phase::Spill] = gt(Phase::Spill, m) * noise_factor(cluster, seed, i, Phase::Spill);
    // A single spill file that fits under the buffer threshold needs no merge.
    const bool merge_skipped = (t.spill_file_count == 1 && m <= cluster.spill_trigger_mb());
    t.phase_ms[Phase::Merge] =
        merge_skipped ? 0.0 : gt(Phase::Merge, m) * noise_factor(cluster, seed, i, Phase::Merge);
    trace.tasks.push_back(std::move(t));
  }

  if (workload.reducer_count >= 1) {
    const double total_keys = f.map_output_mb * workload.keys_per_mb;
    const milliseconds reduce_custom = custom_phase_time(
        total_keys, workload.reduce_ms_per_key, workload.reducer_count, n_c);
    for (int j = 0; j < workload.reducer_count; ++j) {
      TaskTrace t;
      t.task_id = fmt::format("red_{:05d}", j);
      t.kind = TaskKind::Reduce;
      t.wave_index = j / n_c;
      const megabytes s = f.shuffle_per_reducer_mb;
      const megabytes r = s * workload.reduce_selectivity;
      t.input_mb = s;
      t.output_mb = r;
      const int ti = f.total_mappers + j;
      t.phase_ms[Phase::Shuffle] =
          phase_ground_truth(Phase::Shuffle, s, f.total_mappers, cluster.ground_truth) *
          noise_factor(cluster, seed, ti, Phase::Shuffle);
      t.phase_ms[Phase::Reduce] = reduce_custom * noise_factor(cluster, seed, ti, Phase::Reduce);
      t.phase_ms[Phase::Write] =
          phase_ground_truth(Phase::Write, r, f.total_mappers, cluster.ground_truth) *
          noise_factor(cluster, seed, ti, Phase::Write);
      trace.tasks.push_back(std::move(t));
    }
  }

  // FIFO wave schedule with a write barrier between map and reduce: the job
  // time is the sum over waves of each wave's slowest task.
  milliseconds total = 0.0;
  for (TaskKind kind : {TaskKind::Map, TaskKind::Reduce}) {
    std::map<int, milliseconds> wave_max;
    for (const TaskTrace& t : trace.tasks) {
      if (t.kind != kind) continue;
      auto [it, inserted] = wave_max.try_emplace(t.wave_index, t.total_ms());
      if (!inserted) it->second = std::max(it->second, t.total_ms());
    }
    for (const auto& [wave, ms] : wave_max) total += ms;
  }
  trace.total_ms = total;
  return trace;
}

}  // namespace mrperf
