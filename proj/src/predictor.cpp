#include "mrperf/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "mrperf/domain.hpp"
#include "mrperf/simcluster.hpp"

namespace mrperf {

milliseconds predict_phase(const PhaseModel& model, const std::vector<double>& raw_features,
                           bool* clamped) {
  const auto cols = recipe_apply(model.phase, raw_features);
  const auto all_names = recipe_column_names(model.phase);
  double y = model.fit.intercept;
  for (std::size_t j = 0; j < model.fit.feature_names.size(); ++j) {
    const auto it = std::find(all_names.begin(), all_names.end(), model.fit.feature_names[j]);
    if (it == all_names.end()) {
      throw InvalidInput("predict_phase: model feature not in phase recipe: " +
                         model.fit.feature_names[j]);
    }
    y += model.fit.coefficients[j] * cols[static_cast<std::size_t>(it - all_names.begin())];
  }
  if (y < 0.0 && clamped) *clamped = true;
  return std::max(y, 0.0);
}

namespace {

struct MapTaskTimes {
  std::map<Phase, milliseconds> phase_ms;
  milliseconds total = 0.0;
};

MapTaskTimes map_task_times(const PhaseModelSet& models, const ClusterProfile& cluster,
                            megabytes d, double map_selectivity, int total_mappers,
                            milliseconds map_custom_ms, bool* clamped) {
  MapTaskTimes t;
  const megabytes m = d * map_selectivity;
  const auto clamping = [&](const PhaseModel& model, const std::vector<double>& raw) {
    return predict_phase(model, raw, clamped);
  };
  t.phase_ms[Phase::Read] = clamping(models.at(Phase::Read), {d});
  t.phase_ms[Phase::Map] = map_custom_ms;
  t.phase_ms[Phase::Collect] = clamping(models.at(Phase::Collect), {m});
  t.phase_ms[Phase::Spill] = clamping(models.at(Phase::Spill), {m});
  // Mirror the cluster's merge behaviour: one under-threshold spill file
  // means the merge never runs.
  const bool merge_skipped =
      spill_file_count(m, cluster) == 1 && m <= cluster.spill_trigger_mb();
  t.phase_ms[Phase::Merge] = merge_skipped ? 0.0 : clamping(models.at(Phase::Merge), {m});
  for (const auto& [p, ms] : t.phase_ms) t.total += ms;
  return t;
}

}  // namespace

JobPrediction predict_job(const PhaseModelSet& models, const WorkloadSpec& workload,
                          const ClusterProfile& cluster, const CustomTimes& custom) {
  models.validate();
  const DerivedFeatures f = derive_features(workload, cluster);
  const int n_c = cluster.container_count;

  // Custom map/reduce per-task terms.
  milliseconds map_custom = 0.0;
  milliseconds reduce_custom = 0.0;
  if (custom.source == CustomTimes::Source::WorkloadRates) {
    const double total_records = workload.input_mb * kBytesPerMb / cluster.record_size_bytes;
    map_custom =
        custom_phase_time(total_records, workload.map_ms_per_record, f.total_mappers, n_c);
    if (workload.reducer_count >= 1) {
      const double total_keys = f.map_output_mb * workload.keys_per_mb;
      reduce_custom =
          custom_phase_time(total_keys, workload.reduce_ms_per_key, workload.reducer_count, n_c);
    }
  } else {
    if (!custom.map_fn_total_ms) {
      throw MissingInputError(
          "predict_job: measured custom times selected but the map() total is missing; "
          "supply it or use per-record rates");
    }
    map_custom = *custom.map_fn_total_ms / f.total_mappers / n_c;
    if (workload.reducer_count >= 1) {
      if (!custom.reduce_fn_total_ms) {
        throw MissingInputError(
            "predict_job: workload has reducers but the reduce() total is missing; "
            "supply it or use per-record rates");
      }
      reduce_custom = *custom.reduce_fn_total_ms / workload.reducer_count / n_c;
    }
  }

  JobPrediction out;
  out.workload_name = workload.name;
  out.map_waves = f.map_waves;
  out.reduce_waves = f.reduce_waves;

  // Full-block task and the (possibly smaller) last task carrying the input
  // remainder.
  const megabytes d_full = std::min(cluster.block_size_mb, workload.input_mb);
  const megabytes d_last =
      workload.input_mb - (f.total_mappers - 1) * cluster.block_size_mb;
  const MapTaskTimes full = map_task_times(models, cluster, d_full, workload.map_selectivity,
                                           f.total_mappers, map_custom, &out.clamped_negative);
  out.map_task_phase_ms = full.phase_ms;

  // Wave critical path: every wave is paced by a full-block task unless the
  // final wave holds nothing but the remainder task.
  const int last_wave_tasks = f.total_mappers - (f.map_waves - 1) * n_c;
  const bool lone_remainder = last_wave_tasks == 1 && d_last < d_full;
  MapTaskTimes last = full;
  if (lone_remainder) {
    last = map_task_times(models, cluster, d_last, workload.map_selectivity, f.total_mappers,
                          map_custom, &out.clamped_negative);
  }

  milliseconds map_part = 0.0;
  for (Phase p : kMapPhases) {
    const milliseconds contrib =
        (f.map_waves - 1) * full.phase_ms.at(p) + last.phase_ms.at(p);
    out.breakdown[p] = contrib;
    map_part += contrib;
  }
  out.map_task_ms = f.map_waves > 0 ? map_part / f.map_waves : 0.0;

  milliseconds reduce_part = 0.0;
  if (workload.reducer_count >= 1) {
    const megabytes s = f.shuffle_per_reducer_mb;
    const megabytes r = s * workload.reduce_selectivity;
    std::map<Phase, milliseconds> rt;
    rt[Phase::Shuffle] = predict_phase(models.at(Phase::Shuffle),
                                       {s, static_cast<double>(f.total_mappers)},
                                       &out.clamped_negative);
    rt[Phase::Reduce] = reduce_custom;
    rt[Phase::Write] = predict_phase(models.at(Phase::Write), {r}, &out.clamped_negative);
    out.reduce_task_phase_ms = rt;
    for (Phase p : kReducePhases) {
      const milliseconds contrib = f.reduce_waves * rt.at(p);
      out.breakdown[p] = contrib;
      reduce_part += contrib;
      out.reduce_task_ms += rt.at(p);
    }
  }

  out.total_ms = map_part + reduce_part;
  return out;
}

PredictionErrorReport evaluate_prediction(const PhaseModelSet& models,
                                          const WorkloadSpec& workload,
                                          const ClusterProfile& cluster,
                                          const std::vector<std::int64_t>& seeds) {
  const milliseconds predicted =
      predict_job(models, workload, cluster, CustomTimes::from_workload_rates()).total_ms;
  PredictionErrorReport report;
  for (std::int64_t seed : seeds) {
    const milliseconds actual = simulate_job(cluster, workload, seed).total_ms;
    const double err = (actual - predicted) / actual * 100.0;
    report.errors_pct.push_back(err);
    report.mean_abs_pct += std::fabs(err);
    report.max_abs_pct = std::max(report.max_abs_pct, std::fabs(err));
  }
  if (!report.errors_pct.empty()) {
    report.mean_abs_pct /= static_cast<double>(report.errors_pct.size());
  }
  return report;
}

std::string prediction_table(const JobPrediction& p) {
  std::string out;
  out += fmt::format("{:<10} {:>14} {:>7} {:>16} {:>8}\n", "phase", "per-task ms", "waves",
                     "contribution ms", "share %");
  for (Phase phase : kMapPhases) {
    const double task_ms = p.map_task_phase_ms.count(phase) ? p.map_task_phase_ms.at(phase) : 0.0;
    const double contrib = p.breakdown.count(phase) ? p.breakdown.at(phase) : 0.0;
    out += fmt::format("{:<10} {:>14.3f} {:>7} {:>16.3f} {:>8.2f}\n", phase_name(phase), task_ms,
                       p.map_waves, contrib, p.total_ms > 0 ? contrib / p.total_ms * 100.0 : 0.0);
  }
  for (Phase phase : kReducePhases) {
    const double task_ms =
        p.reduce_task_phase_ms.count(phase) ? p.reduce_task_phase_ms.at(phase) : 0.0;
    const double contrib = p.breakdown.count(phase) ? p.breakdown.at(phase) : 0.0;
    out += fmt::format("{:<10} {:>14.3f} {:>7} {:>16.3f} {:>8.2f}\n", phase_name(phase), task_ms,
                       p.reduce_waves, contrib, p.total_ms > 0 ? contrib / p.total_ms * 100.0 : 0.0);
  }
  out += fmt::format("total_ms {:.3f} (map waves {} x {:.3f} + reduce waves {} x {:.3f})\n",
                     p.total_ms, p.map_waves, p.map_task_ms, p.reduce_waves, p.reduce_task_ms);
  return out;
}

}  // namespace mrperf
