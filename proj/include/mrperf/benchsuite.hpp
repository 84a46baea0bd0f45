#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mrperf/predictor.hpp"
#include "mrperf/types.hpp"

namespace mrperf {

struct SuiteEntry {
  WorkloadSpec workload;
  DesignPattern pattern = DesignPattern::Generic;
  std::string notes;
};

struct SuiteRow {
  std::string algorithm;
  DesignPattern pattern = DesignPattern::Generic;
  milliseconds predicted_ms = 0.0;
  milliseconds actual_ms = 0.0;  // mean simulated total across seeds
  long predicted_sec = 0;
  long actual_sec = 0;
  double error_pct = 0.0;  // (actual - predicted) / actual * 100
  JobPrediction prediction;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::map<DesignPattern, double> pattern_mean_abs_error_pct;
  double mean_abs_error_pct = 0.0;
  double max_abs_error_pct = 0.0;
  std::vector<std::int64_t> seeds;

  std::string to_csv() const;       // Algorithm,Predicted,Actual,Error%
  std::string to_markdown() const;
  std::string breakdown_csv() const;  // per entry per phase contribution
};

// The design-pattern workload catalogue: 14 entries, at least three per
// pattern. Input sizes follow the catalogue; selectivities and custom costs
// are per-pattern defaults.
std::vector<SuiteEntry> default_suite();

// Predicts and simulates every entry; actual is the mean simulated total
// over the given seeds.
SuiteReport run_suite(const PhaseModelSet& models, const ClusterProfile& cluster,
                      const std::vector<SuiteEntry>& suite,
                      const std::vector<std::int64_t>& seeds);

}  // namespace mrperf
