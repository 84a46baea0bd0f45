#include "mrperf/benchsuite.hpp"

#include <cmath>
#include <fmt/format.h>

#include "mrperf/simcluster.hpp"

namespace mrperf {

namespace {

SuiteEntry entry(const std::string& name, DesignPattern pattern, megabytes input_mb,
                 double m_sel, double r_sel, int reducers, double map_rate, double reduce_rate,
                 const std::string& notes) {
  SuiteEntry e;
  e.workload.name = name;
  e.workload.input_mb = input_mb;
  e.workload.map_selectivity = m_sel;
  e.workload.reduce_selectivity = r_sel;
  e.workload.reducer_count = reducers;
  e.workload.map_ms_per_record = map_rate;
  e.workload.reduce_ms_per_key = reduce_rate;
  e.workload.keys_per_mb = 2000.0;
  e.workload.design_pattern = pattern;
  e.pattern = pattern;
  e.notes = notes;
  return e;
}

}  // namespace

std::vector<SuiteEntry> default_suite() {
  using P = DesignPattern;
  std::vector<SuiteEntry> suite;
  // Summarisation: heavy aggregation, tiny reduce output.
  suite.push_back(entry("MinMaxCount", P::Summarisation, 16384, 0.30, 0.002, 8, 1.5e-5, 0.004,
                        "per-key min/max/count aggregation"));
  suite.push_back(entry("Average Count", P::Summarisation, 16384, 0.30, 0.003, 8, 1.5e-5, 0.004,
                        "per-key mean and count"));
  suite.push_back(entry("Median and Std.", P::Summarisation, 16384, 0.32, 0.003, 8, 1.8e-5, 0.005,
                        "per-key median and standard deviation"));
  suite.push_back(entry("Inverted Index", P::Summarisation, 12288, 0.40, 0.05, 8, 2.0e-5, 0.004,
                        "term to document-id index"));
  // Filtering: most input discarded at the mapper.
  suite.push_back(entry("Grep", P::Filtering, 12288, 0.08, 1.0, 8, 1.2e-5, 0.002,
                        "pattern match over lines"));
  suite.push_back(entry("Top X", P::Filtering, 2765, 0.05, 1.0, 8, 1.2e-5, 0.002,
                        "top-100 selection"));
  suite.push_back(entry("Distinct", P::Filtering, 16384, 0.12, 1.0, 8, 1.5e-5, 0.002,
                        "duplicate elimination"));
  // Data organisation: volume-preserving restructuring.
  suite.push_back(entry("Structure to Hierarchy", P::DataOrganisation, 28672, 1.0, 1.0, 8,
                        2.0e-5, 0.003, "question/answer hierarchy over two inputs (12 + 16 GB)"));
  suite.push_back(entry("Total Order Sorting", P::DataOrganisation, 2662, 1.0, 1.0, 8, 1.5e-5,
                        0.002, "globally sorted output"));
  suite.push_back(entry("Shuffling", P::DataOrganisation, 2765, 1.0, 1.0, 8, 1.5e-5, 0.002,
                        "anonymising random reorder"));
  // Join: reduce-side joins over posts + comments (16 GB + 2.7 GB).
  suite.push_back(entry("RSJ Inner", P::Join, 19149, 1.0, 1.0, 8, 2.0e-5, 0.005,
                        "reduce-side inner join"));
  suite.push_back(entry("RSJ Left Outer", P::Join, 19149, 1.0, 1.05, 8, 2.0e-5, 0.005,
                        "reduce-side left outer join"));
  suite.push_back(entry("RSJ Right Outer", P::Join, 19149, 1.0, 1.08, 8, 2.0e-5, 0.005,
                        "reduce-side right outer join"));
  suite.push_back(entry("RSJ Full Outer", P::Join, 19149, 1.0, 1.15, 8, 2.0e-5, 0.005,
                        "reduce-side full outer join"));
  return suite;
}

SuiteReport run_suite(const PhaseModelSet& models, const ClusterProfile& cluster,
                      const std::vector<SuiteEntry>& suite,
                      const std::vector<std::int64_t>& seeds) {
  if (seeds.empty()) throw InvalidInput("run_suite: need at least one seed");
  SuiteReport report;
  report.seeds = seeds;

  std::map<DesignPattern, std::pair<double, int>> pattern_acc;
  for (const SuiteEntry& e : suite) {
    SuiteRow row;
    row.algorithm = e.workload.name;
    row.pattern = e.pattern;
    row.prediction = predict_job(models, e.workload, cluster, CustomTimes::from_workload_rates());
    row.predicted_ms = row.prediction.total_ms;

    double sum = 0.0;
    for (std::int64_t seed : seeds) sum += simulate_job(cluster, e.workload, seed).total_ms;
    row.actual_ms = sum / static_cast<double>(seeds.size());

    row.error_pct = (row.actual_ms - row.predicted_ms) / row.actual_ms * 100.0;
    row.predicted_sec = std::lround(row.predicted_ms / 1000.0);
    row.actual_sec = std::lround(row.actual_ms / 1000.0);

    report.mean_abs_error_pct += std::fabs(row.error_pct);
    report.max_abs_error_pct = std::max(report.max_abs_error_pct, std::fabs(row.error_pct));
    auto& acc = pattern_acc[e.pattern];
    acc.first += std::fabs(row.error_pct);
    acc.second += 1;
    report.rows.push_back(std::move(row));
  }
  if (!report.rows.empty()) {
    report.mean_abs_error_pct /= static_cast<double>(report.rows.size());
  }
  for (const auto& [pattern, acc] : pattern_acc) {
    report.pattern_mean_abs_error_pct[pattern] = acc.first / acc.second;
  }
  return report;
}

std::string SuiteReport::to_csv() const {
  std::string out = "Algorithm,Predicted,Actual,Error%\n";
  for (const SuiteRow& r : rows) {
    out += fmt::format("{},{},{},{:.1f}\n", r.algorithm, r.predicted_sec, r.actual_sec,
                       r.error_pct);
  }
  return out;
}

std::string SuiteReport::to_markdown() const {
  std::string out = "| Algorithm | Predicted (sec) | Actual (sec) | Error% |\n";
  out += "|---|---|---|---|\n";
  for (const SuiteRow& r : rows) {
    out += fmt::format("| {} | {} | {} | {:.1f} |\n", r.algorithm, r.predicted_sec, r.actual_sec,
                       r.error_pct);
  }
  out += "\n";
  for (const auto& [pattern, err] : pattern_mean_abs_error_pct) {
    out += fmt::format("- {}: mean |Error%| = {:.2f}\n", pattern_name(pattern), err);
  }
  out += fmt::format("- overall: mean |Error%| = {:.2f}, max |Error%| = {:.2f}\n",
                     mean_abs_error_pct, max_abs_error_pct);
  return out;
}

std::string SuiteReport::breakdown_csv() const {
  std::string out = "algorithm,phase,per_task_ms,waves,contribution_ms\n";
  for (const SuiteRow& r : rows) {
    for (Phase p : kMapPhases) {
      out += fmt::format("{},{},{:.3f},{},{:.3f}\n", r.algorithm, phase_name(p),
                         r.prediction.map_task_phase_ms.count(p)
                             ? r.prediction.map_task_phase_ms.at(p)
                             : 0.0,
                         r.prediction.map_waves,
                         r.prediction.breakdown.count(p) ? r.prediction.breakdown.at(p) : 0.0);
    }
    for (Phase p : kReducePhases) {
      out += fmt::format("{},{},{:.3f},{},{:.3f}\n", r.algorithm, phase_name(p),
                         r.prediction.reduce_task_phase_ms.count(p)
                             ? r.prediction.reduce_task_phase_ms.at(p)
                             : 0.0,
                         r.prediction.reduce_waves,
                         r.prediction.breakdown.count(p) ? r.prediction.breakdown.at(p) : 0.0);
    }
  }
  return out;
}

}  // namespace mrperf
