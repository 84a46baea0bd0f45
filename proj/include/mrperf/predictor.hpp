#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrperf/models.hpp"
#include "mrperf/types.hpp"

namespace mrperf {

struct MissingInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Where the custom map/reduce per-task times come from: either the
// workload's analytic per-record rates, or measured totals of the map()/
// reduce() function time taken from a reference run.
struct CustomTimes {
  enum class Source { WorkloadRates, MeasuredTotals };
  Source source = Source::WorkloadRates;
  std::optional<milliseconds> map_fn_total_ms;
  std::optional<milliseconds> reduce_fn_total_ms;

  static CustomTimes from_workload_rates() { return {}; }
  static CustomTimes from_totals(std::optional<milliseconds> map_total,
                                 std::optional<milliseconds> reduce_total) {
    return {Source::MeasuredTotals, map_total, reduce_total};
  }
};

struct JobPrediction {
  std::string workload_name;
  // Per-task phase times for a full-block map task and one reduce task.
  std::map<Phase, milliseconds> map_task_phase_ms;
  std::map<Phase, milliseconds> reduce_task_phase_ms;
  milliseconds map_task_ms = 0.0;     // effective per-wave critical task time
  milliseconds reduce_task_ms = 0.0;
  int map_waves = 0;
  int reduce_waves = 0;
  milliseconds total_ms = 0.0;
  std::map<Phase, milliseconds> breakdown;  // whole-job contribution per phase
  bool clamped_negative = false;            // some phase prediction clamped to 0
};

struct PredictionErrorReport {
  std::vector<double> errors_pct;  // (actual - predicted) / actual * 100, per seed
  double mean_abs_pct = 0.0;
  double max_abs_pct = 0.0;
};

// Linear evaluation of one phase model on raw feature values, clamped >= 0.
// *clamped is set when the unclamped value was negative.
milliseconds predict_phase(const PhaseModel& model, const std::vector<double>& raw_features,
                           bool* clamped = nullptr);

// Composes per-task phase predictions into a whole-job estimate through the
// ceiling wave counts, with a full map/reduce barrier.
JobPrediction predict_job(const PhaseModelSet& models, const WorkloadSpec& workload,
                          const ClusterProfile& cluster, const CustomTimes& custom);

// Simulates the workload once per seed and reports the percentage error of
// the prediction against each simulated actual.
PredictionErrorReport evaluate_prediction(const PhaseModelSet& models,
                                          const WorkloadSpec& workload,
                                          const ClusterProfile& cluster,
                                          const std::vector<std::int64_t>& seeds);

// Human-readable breakdown table (phase, per-task ms, waves, contribution,
// share %).
std::string prediction_table(const JobPrediction& prediction);

}  // namespace mrperf
